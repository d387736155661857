#include "jetcc/formal.hpp"

namespace jetcc {

FiCertificate certify_fi(const PDESystem& sys, int acyclic_cap) {
  FiCertificate cert;
  int q = std::max(sys.order(), 0);
  for (int j = 0; j <= acyclic_cap; ++j) {
    if (is_2_acyclic(sys, j)) {
      cert.j_star = j;
      break;
    }
  }
  if (cert.j_star < 0) return cert;
  for (int i = 0; i <= cert.j_star; ++i) {
    long long plain = solve_at(sys, q + i, false).dim();
    long long projected = solve_at(sys, q + i + 1, false).projected_dim(q + i);
    cert.projections.emplace_back(projected, plain);
    if (projected != plain) {
      cert.failed_projection = i;
      return cert;
    }
  }
  cert.certified = true;
  return cert;
}

PPResult pp_procedure(const PDESystem& sys, int max_steps) {
  PPResult out;
  int q = std::max(sys.order(), 0);
  long long last_dim = -1, last_tried = -1;
  for (int s = 0; s <= max_steps; ++s) {
    SolveResult solved = solve_at(sys, q + s);
    long long d = solved.projected_dim(q);
    if (last_dim < 0 || d < last_dim) {
      out.chain.emplace_back(s, d);
      last_dim = d;
    }
    // Nested projections of equal dimension are the same space (and the
    // canonical reduced rows coincide), so a failed certificate need not be
    // recomputed until the dimension drops again.
    if (d == last_tried) continue;
    last_tried = d;
    PDESystem projected = project(sys, solved, q);
    out.stable = projected;
    // Only certify once the projected rows generate exactly the projected
    // space; otherwise deeper consequences are still being absorbed.
    if (dim_solution(projected, q) != d) continue;
    FiCertificate cert = certify_fi(projected);
    if (cert.certified) {
      out.stable_s = s;
      out.certified = true;
      out.certificate = cert;
      return out;
    }
  }
  out.certified = false;
  return out;
}

}  // namespace jetcc
