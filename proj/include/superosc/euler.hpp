#pragma once

#include <stdexcept>
#include <vector>

#include "superosc/logsigned.hpp"

namespace superosc::euler {

struct Zero {
    double location = 0.0;
    int multiplicity = 1;
};

// Ordered multiset of real zeros for the oscillatory product part.
struct ZeroSet {
    std::vector<Zero> zeros;  // sorted by location, locations distinct
    bool symmetric = false;

    int degree() const;  // total zero count with multiplicity
    void validate() const;

    static ZeroSet make(std::vector<Zero> zs, bool symmetric);
};

// Cosine zero family t_n = +/-(2n-1)/(4 f0), n = 1..N.
struct CosineZeroParams {
    double f0 = 1.0;   // Hz, > 0
    int truncation = 1;  // N >= 1

    void validate() const;
};

ZeroSet cosine_zeros(const CosineZeroParams& p);

// Product over zeros of (1 - t/t_n)^multiplicity (factor t for a zero at the
// origin), accumulated in log-domain. Exact 0 within 1e-12 relative of a
// zero location.
LogSigned product_direct(const ZeroSet& zs, double t);

class GammaPoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Same truncated cosine product through the gamma-function identity:
// Gamma(N+1/2-2f0t) Gamma(N+1/2+2f0t) / Gamma(N+1/2)^2 * cos(2 pi f0 t).
// O(1) per point. Throws GammaPoleError when a gamma argument lands on a
// pole (only possible for |2 f0 t| >= N + 1/2); fall back to product_direct.
LogSigned product_gamma_form(const CosineZeroParams& p, double t);

struct AsymptoticProduct {
    LogSigned value;
    bool in_validity_range = true;  // N >= 10 f0 |t|
};

// exp[(2 f0 t)^2 / (N + 1/2)] cos(2 pi f0 t).
AsymptoticProduct product_asymptotic(const CosineZeroParams& p, double t);

}  // namespace superosc::euler
