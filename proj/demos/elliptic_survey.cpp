// Walks a few Weierstrass surfaces over P^1 and prints the Kodaira profile,
// the discriminant/moduli split, and both stability verdicts.

#include <iostream>

#include "qmapk/qmapk.hpp"

using namespace qmapk;

namespace {

void survey(const std::string& label, const WeierstrassModel& w) {
  EllipticReport rep = elliptic_report(w);
  std::cout << label << " (k = " << rep.k << ")\n";
  for (const auto& e : rep.profile)
    std::cout << "  " << kodaira_name(e.type) << " on " << form_to_string(e.cluster)
              << "  ord(Delta) = " << e.ord_d << ", lct = " << rat_to_string(e.lct) << "\n";
  std::cout << "  disc degree = " << rat_to_string(rep.disc_divisor.degree())
            << ", moduli degree = " << rat_to_string(rep.moduli_degree) << "\n";
  if (rep.adiabatic)
    std::cout << "  adiabatic: " << adiabatic_name(*rep.adiabatic)
              << ", j-quasimap: " << stability_name(rep.associated_class.kind) << "\n";
}

}  // namespace

int main() {
  // generic: twelve I_1 fibers, moduli degree 1
  std::vector<Rat> ac{Rat(1), Rat(2), Rat(0), Rat(1), Rat(1)};
  std::vector<Rat> bc{Rat(1), Rat(0), Rat(3), Rat(0), Rat(0), Rat(1), Rat(1)};
  survey("generic surface", make_weierstrass(1, BForm(4, ac), BForm(6, bc)));

  // A = x^2 y^2, B = x^3 y^3: two I_0* fibers, constant j-map
  BForm A = form_mul(form_pow(form_x(), 2), form_pow(form_y(), 2));
  BForm B = form_mul(form_pow(form_x(), 3), form_pow(form_y(), 3));
  survey("isotrivial with two I_0*", make_weierstrass(1, A, B));

  // A = 0: six type II fibers, j identically zero
  std::vector<Rat> b6{Rat(1), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};
  survey("j = 0 surface", make_weierstrass(1, BForm::zero(4), BForm(6, b6)));
  return 0;
}
