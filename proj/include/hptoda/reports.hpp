#pragma once

#include <complex>
#include <string>

#include "hptoda/curve.hpp"
#include "hptoda/genus1.hpp"
#include "hptoda/reduction.hpp"
#include "hptoda/spectral.hpp"

namespace hptoda {

/// Decimal with 17 significant digits.
std::string decimal(double v);

/// step,x_deg,y_deg,value with exact p/q values.
std::string invariants_csv(const InvariantReport& report);

/// Spectral data as a JSON object.
std::string spectral_json(const SpectralData& data);

/// One row per boundary sample, then the extrapolated limits, then a final
/// "ratio" row holding psi(Q)/psi(P) and phi(Q)/phi(P).
std::string boundary_csv(const BoundaryLimits& limits, int sites);

/// n,t,var,exact,exact_decimal,reconstructed_re,reconstructed_im,rel_err
std::string reconstruction_csv(const ReconstructionReport& report);

/// zeta,max_r1,max_r2,max_r3,subseq_dev,max_r4
std::string zeta_csv(const ZetaReport& report);

}  // namespace hptoda
