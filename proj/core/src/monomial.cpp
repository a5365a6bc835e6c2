#include "picard/monomial.hpp"

#include <algorithm>

namespace picard {

std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

namespace {

void enumerate(int nvars, int var, int remaining, Monomial& current, std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    current[var] = static_cast<std::uint16_t>(remaining);
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = static_cast<std::uint16_t>(e);
    enumerate(nvars, var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  if (degree < 0 || nvars <= 0) return out;
  Monomial current;
  enumerate(nvars, 0, degree, current, out);
  std::sort(out.begin(), out.end(), GrevlexDescending{});
  return out;
}

std::vector<Monomial> monomials_up_to(int nvars, int degree) {
  std::vector<Monomial> out;
  for (int k = degree; k >= 0; --k) {
    auto slice = monomials_of_degree(nvars, k);
    out.insert(out.end(), slice.begin(), slice.end());
  }
  return out;
}

}  // namespace picard
