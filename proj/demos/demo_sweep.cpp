// Runs one symbol inequality sweep and prints the margin and worst point.

#include <cstdio>

#include "wwstab/sweeps.hpp"

using namespace wwstab;

int main() {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(500.0, 256);
  SolitonProfile prof = build_profile(p.epsilon, g);

  Grid3D grid;
  grid.xs = {0.0, 5.0 / p.epsilon};
  grid.xis = make_freq_axis(0.0, 50.0, 80, true, p.a());
  grid.etas = make_freq_axis(0.0, 50.0, 80, true, p.a());
  SweepReport rep = sweep_inequality("relambdapm", grid, p, prof);
  std::printf("relambdapm over %zu points: min margin %.3e at (xi, eta) = (%.3f, %.3f) -> %s\n",
              rep.points, rep.min_margin, rep.worst_xi, rep.worst_eta,
              rep.pass ? "holds" : "violated");
  return 0;
}
