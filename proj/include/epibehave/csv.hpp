#ifndef EPIBEHAVE_CSV_HPP
#define EPIBEHAVE_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

#include "epibehave/contact_rate.hpp"
#include "epibehave/endogenous.hpp"
#include "epibehave/model.hpp"
#include "epibehave/onset.hpp"
#include "epibehave/phase.hpp"

namespace epibehave::io {

// 12 significant digits, round-trips the tolerances used elsewhere.
std::string format_double(double v);

// t,S,I,R,eps,Rt_b
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// t,S,I,R,eps,eta,p
void write_equilibrium_csv(std::ostream& os,
                           const endogenous::EquilibriumSolution& sol);

// param,value,i_peak,s_peak,s_inf,took_off
void write_sweep_csv(std::ostream& os, const phase::SweepTable& table);

// beta,neg_eta_frontier
void write_frontier_csv(std::ostream& os, const onset::SeverityFrontier& fr);

// I,g_quadratic,g_capasso
void write_contact_csv(std::ostream& os,
                       const contact_rate::ForceOfInfection& quadratic,
                       const contact_rate::ForceOfInfection& capasso,
                       std::size_t n = 1001);

}  // namespace epibehave::io

#endif
