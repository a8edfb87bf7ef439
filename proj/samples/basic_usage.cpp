// Solves W = x + 1/x + t x^2 and prints the truncated positive critical point.

#include <iostream>

#include "tropcrit/tropcrit.hpp"

int main() {
  using namespace tropcrit;
  LaurentPoly w(1, {
                       {PuiseuxSeries::constant(1.0), {Rational(1)}},
                       {PuiseuxSeries::constant(1.0), {Rational(-1)}},
                       {PuiseuxSeries::monomial(1.0, Rational(1)), {Rational(2)}},
                   });

  CritResult res = solve_critical(w, Rational(3));
  std::cout << "W       = " << w.str() << "\n";
  std::cout << "d_crit  = " << to_string(res.d_crit) << "\n";
  std::cout << "d_coeff = " << res.d_coeff[0] << "\n";
  std::cout << "w_crit  = " << res.w_crit[0].str() << "\n";
  std::cout << "x_crit  = " << res.point().coordinate(0, Rational(3)).str() << "\n";

  NondegeneracyCertificate cert = check_nondegenerate(w, res);
  std::cout << "Hessian positive: " << (cert.ok ? "yes" : "no") << "\n";
}
