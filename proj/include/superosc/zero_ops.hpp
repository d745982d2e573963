#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "superosc/envelope.hpp"
#include "superosc/signal.hpp"

namespace superosc::zero_ops {

struct LedgerZero {
    double location = 0.0;
    int multiplicity = 1;
};

// Immutable record of zero additions/removals applied on top of a band
// limited base envelope. Evaluation multiplies by (1 - t/t0) per added zero
// (or by t when t0 = 0) and divides by (1 - t/t1)^k per removed zero, with
// the removable singularity handled by a local polynomial fit.
struct ZeroLedger {
    envelope::EnvelopeSpec base;
    std::vector<LedgerZero> added;
    std::vector<LedgerZero> removed;

    int added_count() const;
    int removed_count() const;
    int net_decay_delta() const { return removed_count() - added_count(); }

    // Tail power-law order of the modified function; -inf for bump bases.
    double effective_tail_order() const;

    // Period-scale of the base's oscillation, used to size verification
    // windows and singularity stencils.
    double local_scale() const { return 0.5 / base.band_halfwidth(); }
};

class GuardError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};
class NotAZeroError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

ZeroLedger make_ledger(const envelope::EnvelopeSpec& base);

// Multiply by (1 - t/t0). Requires the current tails to decay at least as
// fast as |t|^-2 (square-integrability guard); throws GuardError naming the
// deficient order otherwise.
ZeroLedger add_zero(const ZeroLedger& ledger, double t0);

// Divide by (1 - t/t1)^k after verifying that t1 really is a zero of the
// current function of multiplicity >= k; the verified-and-refined location
// is what gets recorded. Throws NotAZeroError otherwise.
ZeroLedger remove_zero(const ZeroLedger& ledger, double t1, int k = 1);

// remove_zero(t1, 1) followed by add_zero(t0); net decay change is zero.
ZeroLedger shift_zero(const ZeroLedger& ledger, double t1, double t0);

// Value of the modified function.
double eval(const ZeroLedger& ledger, double t);

// Uniform-grid materialization for spectral measurements.
SampledSignal sample(const ZeroLedger& ledger, double t_min, double t_max, std::size_t count);

// Closed-form Fourier transform of 1/(t - t1):
// -i pi sign(f) exp(-i 2 pi f t1).
std::complex<double> hilbert_kernel_ft(double t1, double f);

// Conditioning diagnostic: min spacing among the ledger's zeros times the
// band halfwidth. Small values mean the clustered zeros are numerically
// fragile; no hard limit is enforced.
double condition_diagnostic(const ZeroLedger& ledger);

}  // namespace superosc::zero_ops
