// Eigenvalue trajectories of L_r for six points, r in (0, 7), written as a
// signed-log CSV table. The inertia columns change only at r = 1, ..., 5.
//
//   figure1_sample [out.csv]

#include "loewner/loewner.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace loewner;
  const auto config = make_point_config(std::vector<Rational>{Rational(1), Rational(2), Rational(3), Rational(4),
                                                              Rational(5), Rational(6)});
  const auto sweep = eigen_trajectories(config, 0.05, 6.95, 139, ToleranceContext{});
  const auto table = emit_figure1(sweep);

  if (argc > 1) {
    std::ofstream out(argv[1]);
    table.write_csv(out);
  } else {
    table.write_csv(std::cout);
  }

  for (const auto& change : sign_change_report(sweep)) {
    std::cerr << "inertia " << change.before << " -> " << change.after << " between r=" << change.r_before
              << " and r=" << change.r_after << (change.anomalous ? "  (unexpected)" : "") << '\n';
  }
  return 0;
}
