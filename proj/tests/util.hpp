#pragma once

#include <random>

#include "nonarch/dvr.hpp"
#include "nonarch/laurent.hpp"

namespace testutil {

using namespace nonarch;

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234);
    return gen;
}

inline long long rand_int(long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    return d(rng());
}

inline FElem rand_felem(const FieldPtr& f) {
    if (f->is_finite()) return field_element_by_index(f, rand_int(0, f->size() - 1));
    return FElem::from_rational(f, Rat(Int(rand_int(-9, 9)), Int(rand_int(1, 5))));
}

inline FElem rand_felem_nonzero(const FieldPtr& f) {
    while (true) {
        FElem x = rand_felem(f);
        if (!x.is_zero()) return x;
    }
}

inline Dvr rand_dvr(const FieldPtr& f, int max_terms = 4, int max_ord = 6,
                    int prec = kDefaultPrecision) {
    Dvr d = Dvr::zero(f, prec);
    long long n = rand_int(0, max_terms);
    for (long long i = 0; i < n; ++i)
        d = d + Dvr::constant(rand_felem(f), prec).shift(static_cast<int>(rand_int(0, max_ord)));
    return d;
}

inline Dvr rand_dvr_unit(const FieldPtr& f, int max_terms = 3, int max_ord = 6,
                         int prec = kDefaultPrecision) {
    return Dvr::constant(rand_felem_nonzero(f), prec) + rand_dvr(f, max_terms, max_ord, prec).shift(1).truncated(prec);
}

// Sparse random annulus function with support well inside the window.
inline Laurent rand_laurent(const FieldPtr& f, int e, AnnulusType type, int max_deg = 4,
                            int trunc = kDefaultTruncation, int prec = kDefaultPrecision) {
    Laurent L = Laurent::zero(f, e, type, trunc, prec);
    long long n = rand_int(1, 5);
    for (long long i = 0; i < n; ++i) {
        int d = static_cast<int>(rand_int(-max_deg, max_deg));
        L = L + Laurent::monomial(rand_dvr(f, 3, 4, prec), d, e, type, trunc);
    }
    return L;
}

// Random unit for the given annulus type (ord profile per the unit criterion).
inline Laurent rand_laurent_unit(const FieldPtr& f, int e, AnnulusType type, int max_deg = 3,
                                 int trunc = kDefaultTruncation, int prec = kDefaultPrecision) {
    Laurent L = Laurent::constant(rand_dvr_unit(f, 2, 4, prec), e, type, trunc);
    long long n = rand_int(0, 3);
    for (long long i = 0; i < n; ++i) {
        int d = static_cast<int>(rand_int(1, max_deg));
        bool yside = rand_int(0, 1) == 1;
        Dvr c = rand_dvr(f, 2, 3, prec);
        if (type == AnnulusType::closed || (type == AnnulusType::semi_open && !yside))
            c = c.shift(1).truncated(prec); // positive valuation required for unithood
        L = L + Laurent::monomial(c, yside ? -d : d, e, type, trunc);
    }
    return L;
}

} // namespace testutil
