#include "epibehave/csv.hpp"

#include <cmath>
#include <cstdio>

namespace epibehave::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const ModelParams& p = traj.params;
  os << "t,S,I,R,eps,Rt_b\n";
  for (const auto& st : traj.states) {
    const double rt_b = p.beta / p.gamma * st.s * st.eps;
    os << format_double(st.t) << ',' << format_double(st.s) << ','
       << format_double(st.i) << ',' << format_double(st.r) << ','
       << format_double(st.eps) << ',' << format_double(rt_b) << '\n';
  }
}

void write_equilibrium_csv(std::ostream& os,
                           const endogenous::EquilibriumSolution& sol) {
  os << "t,S,I,R,eps,eta,p\n";
  const auto& traj = sol.trajectory;
  const auto& ct = sol.costate;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& st = traj.states[k];
    os << format_double(st.t) << ',' << format_double(st.s) << ','
       << format_double(st.i) << ',' << format_double(st.r) << ','
       << format_double(ct.eps[k]) << ',' << format_double(ct.eta[k]) << ','
       << format_double(ct.p[k]) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const phase::SweepTable& table) {
  os << "param,value,i_peak,s_peak,s_inf,took_off\n";
  const char* name = phase::sweep_param_name(table.param);
  for (const auto& row : table.rows) {
    os << name << ',' << format_double(row.value) << ','
       << format_double(row.i_peak) << ',' << format_double(row.s_peak)
       << ',' << format_double(row.s_inf) << ','
       << (row.took_off ? "true" : "false") << '\n';
  }
}

void write_frontier_csv(std::ostream& os, const onset::SeverityFrontier& fr) {
  os << "beta,neg_eta_frontier\n";
  for (const auto& pt : fr.points) {
    os << format_double(pt.beta) << ',' << format_double(pt.neg_eta) << '\n';
  }
}

void write_contact_csv(std::ostream& os,
                       const contact_rate::ForceOfInfection& quadratic,
                       const contact_rate::ForceOfInfection& capasso,
                       std::size_t n) {
  os << "I,g_quadratic,g_capasso\n";
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / (n - 1);
    os << format_double(x) << ',' << format_double(quadratic.g(x)) << ','
       << format_double(capasso.g(x)) << '\n';
  }
}

}  // namespace epibehave::io
