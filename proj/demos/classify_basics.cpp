// Builds a few small quasimaps and prints their invariants side by side,
// including the large-weight case where the classification and the literal
// delta invariant deliberately disagree.

#include <iostream>

#include "qmapk/qmapk.hpp"

using namespace qmapk;

namespace {

void show(const std::string& label, const Quasimap& q) {
  NumericInvariants inv = invariants(q);
  StabilityClass cls = classify(q);
  std::cout << label << "\n"
            << "  mu = " << rat_to_string(inv.mu) << ", v = " << rat_to_string(inv.v)
            << ", fixed degree = " << inv.fixed_degree << "\n"
            << "  delta = " << rat_to_string(delta(q)) << ", class = "
            << stability_name(cls.kind) << "\n";
  if (cls.witness)
    std::cout << "  critical cluster: " << form_to_string(cls.witness->cluster) << " at "
              << rat_to_string(cls.witness->mult) << "\n";
}

}  // namespace

int main() {
  // the identity map of P^1 with weight 1: K-stable although delta < 1
  Quasimap identity = make_quasimap(1, Rat(1), {form_x(), form_y()}, QDivisor::zero(), 1);
  show("identity, weight 1", identity);
  show("identity rescaled by 3", rescale(identity, 3));

  // the boundary pair (P^1, p/2) with a quarter of the anticanonical weight
  Quasimap pair = make_quasimap(
      2, Rat(1, 4), {form_pow(form_x(), 2), form_pow(form_y(), 2)},
      QDivisor::from_pairs({{form_x(), Rat(1, 2)}}), 2);
  show("semistable boundary pair", pair);

  DegenerationReport rep = degenerate_at(pair, RationalPoint::affine(Rat(0)));
  std::cout << "  degeneration at 0: beta = " << rat_to_string(rep.beta)
            << ", central class = " << stability_name(classify(rep.central_fiber).kind)
            << "\n";

  // a constant quasimap balanced on two points: polystable
  BForm xy = form_mul(form_x(), form_y());
  Quasimap constant = make_quasimap(2, Rat(1, 2), {xy, form_scale(xy, Rat(2))},
                                    QDivisor::zero(), 1);
  show("balanced constant", constant);
  return 0;
}
