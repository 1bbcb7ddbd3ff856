#include "hptoda/reports.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace hptoda {

std::string decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string invariants_csv(const InvariantReport& report) {
  std::ostringstream os;
  os << "step,x_deg,y_deg,value\n";
  for (std::size_t s = 0; s < report.per_step.size(); ++s)
    for (const auto& [key, c] : report.per_step[s].terms())
      os << s << ',' << key.first << ',' << key.second << ',' << c.str() << '\n';
  return os.str();
}

std::string spectral_json(const SpectralData& d) {
  nlohmann::ordered_json j;
  j["F"] = d.F.str();
  j["genus"] = d.genus;
  j["gcd"] = d.gcd_m;
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const Rat& r : d.a_points_y) a.push_back(r.str());
  j["A_points_y"] = a;
  j["B_point_y"] = d.b_point_y.str();
  j["E"] = d.q_constant.str();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& [key, c] : d.F.terms()) coeffs.push_back({key.first, key.second, c.str()});
  j["coefficients"] = coeffs;
  return j.dump(2) + "\n";
}

std::string boundary_csv(const BoundaryLimits& lim, int sites) {
  std::ostringstream os;
  os << "kind,radius,psi_re,psi_im,phi_re,phi_im";
  for (int i = 1; i < sites; ++i) os << ",abs_g" << i << "_over_gN";
  for (int i = 1; i < sites; ++i) os << ",slope_g" << i;
  os << '\n';
  auto cplx = [&](std::complex<double> z) { os << ',' << decimal(z.real()) << ',' << decimal(z.imag()); };
  auto blanks = [&](int k) {
    for (int i = 0; i < k; ++i) os << ',';
  };
  for (const auto* side : {&lim.at_P, &lim.at_Q}) {
    const char* name = side == &lim.at_P ? "P" : "Q";
    for (const auto& s : side->samples) {
      os << name << ',' << decimal(s.radius);
      cplx(s.psi);
      cplx(s.phi);
      for (double r : s.abs_ratio) os << ',' << decimal(r);
      blanks(sites - 1);
      os << '\n';
    }
  }
  for (const auto* side : {&lim.at_P, &lim.at_Q}) {
    os << (side == &lim.at_P ? "limit_P" : "limit_Q") << ',';
    cplx(side->psi_limit);
    cplx(side->phi_limit);
    blanks(sites - 1);
    for (double sl : side->slopes) os << ',' << decimal(sl);
    os << '\n';
  }
  os << "ratio,";
  cplx(lim.psi_ratio);
  cplx(lim.phi_ratio);
  blanks(2 * (sites - 1));
  os << '\n';
  return os.str();
}

std::string reconstruction_csv(const ReconstructionReport& rep) {
  std::ostringstream os;
  os << "n,t,var,exact,exact_decimal,reconstructed_re,reconstructed_im,rel_err\n";
  for (const auto& r : rep.rows)
    os << r.n << ',' << r.t << ',' << r.var << ',' << r.exact.str() << ',' << decimal(r.exact.to_double())
       << ',' << decimal(r.reconstructed.real()) << ',' << decimal(r.reconstructed.imag()) << ','
       << decimal(r.rel_err) << '\n';
  return os.str();
}

std::string zeta_csv(const ZetaReport& rep) {
  std::ostringstream os;
  os << "zeta,max_r1,max_r2,max_r3,subseq_dev,max_r4\n";
  for (const auto& r : rep.rows)
    os << r.zeta.str() << ',' << decimal(r.max_abs[0]) << ',' << decimal(r.max_abs[1]) << ','
       << decimal(r.max_abs[2]) << ',' << decimal(r.subsequence_deviation) << ','
       << decimal(r.max_abs[3]) << '\n';
  return os.str();
}

}  // namespace hptoda
