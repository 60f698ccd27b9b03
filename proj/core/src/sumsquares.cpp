// (1 + x^2 + y^2)ε = 0 inside the commutative algebra Q[u, v + v^-1]ε.
//
// Candidate subfields L_S·R_j are tried smallest first, each with heights
// 1..cap: L_S is the fixed field
// of a subgroup S of (Z/m)^* (spanned by the periods Σ_{s∈S} u^{cs}) and R_j is
// Q(w + w^-1) for w = v^(2^j). Totally real candidates are skipped. Within a
// subfield, coordinates run over fractions of bounded height and x, y are
// matched meet-in-the-middle on the value of x^2 + 1 = -y^2.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>

#include "primidem_detail.hpp"
#include "qga/errors.hpp"
#include "qga/linalg.hpp"
#include "qga/numtheory.hpp"
#include "qga/primidem.hpp"

namespace qga {

namespace {

using i128 = __int128;

constexpr std::size_t kSideBudget = std::size_t{1} << 21;

struct Subfield {
  std::size_t s_order;              // |S|
  std::size_t r_dim;
  std::vector<AlgElement> basis;    // raw elements of Q[u, v + v^-1]
  std::vector<AlgElement> reduced;  // basis · ε
};

std::vector<std::vector<std::int64_t>> unit_subgroups(std::int64_t m) {
  std::vector<std::int64_t> units;
  for (std::int64_t c = 1; c < std::max<std::int64_t>(m, 2); ++c)
    if (std::gcd(c, m) == 1) units.push_back(c);
  auto close = [&](std::set<std::int64_t> s) {
    std::vector<std::int64_t> frontier(s.begin(), s.end());
    while (!frontier.empty()) {
      std::vector<std::int64_t> next;
      for (auto x : frontier)
        for (auto y : std::vector<std::int64_t>(s.begin(), s.end())) {
          const auto z = nt::mod(x * y, std::max<std::int64_t>(m, 1));
          if (s.insert(z).second) next.push_back(z);
        }
      frontier = std::move(next);
    }
    return std::vector<std::int64_t>(s.begin(), s.end());
  };
  std::set<std::vector<std::int64_t>> found{{1}};
  std::vector<std::vector<std::int64_t>> layer{{1}};
  if (m <= 2) return {{1}};
  while (!layer.empty()) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& s : layer)
      for (auto g : units) {
        std::set<std::int64_t> t(s.begin(), s.end());
        if (t.count(g)) continue;
        t.insert(g);
        auto c = close(std::move(t));
        if (found.insert(c).second) next.push_back(std::move(c));
      }
    layer = std::move(next);
  }
  return {found.begin(), found.end()};
}

std::vector<Rational> height_values(int h) {
  std::vector<Rational> v;
  for (int q = 1; q <= h; ++q)
    for (int p = -h; p <= h; ++p)
      if (std::gcd(p, q) == 1 || p == 0) {
        Rational r(p, q);
        r.canonicalize();
        if (std::find(v.begin(), v.end(), r) == v.end()) v.push_back(r);
      }
  auto height = [](const Rational& r) {
    return std::max(Integer(abs(r.get_num())), Integer(r.get_den()));
  };
  std::stable_sort(v.begin(), v.end(), [&](const Rational& a, const Rational& b) {
    const Integer ha = sgn(a) == 0 ? Integer(0) : height(a);
    const Integer hb = sgn(b) == 0 ? Integer(0) : height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return v;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL + h;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_vec(const std::vector<i128>& v) {
  std::uint64_t h = 0;
  for (i128 x : v) {
    h = mix(h, static_cast<std::uint64_t>(x));
    h = mix(h, static_cast<std::uint64_t>(x >> 64));
  }
  return h;
}

/// Integer structure constants c[i][j][k] (scaled by a common denominator).
struct Structure {
  std::size_t d = 0;
  std::vector<i128> c;  // d*d*d
  i128 denom = 1;
  i128 at(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * d + j) * d + k]; }
};

Structure structure_constants(const Subfield& f) {
  const std::size_t d = f.reduced.size();
  std::vector<linalg::RatVector> span;
  for (const auto& b : f.reduced) span.push_back(b.dense());
  std::vector<linalg::RatVector> coords(d * d);
  Integer den = 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      auto c = linalg::solve_in_span(span, (f.reduced[i] * f.reduced[j]).dense());
      if (!c) throw VerificationError("sum_of_squares: subfield basis is not closed");
      for (const auto& x : *c) den = lcm(den, Integer(x.get_den()));
      coords[i * d + j] = *c;
      coords[j * d + i] = std::move(*c);
    }
  Structure s;
  s.d = d;
  s.c.assign(d * d * d, 0);
  if (!den.fits_slong_p()) throw VerificationError("sum_of_squares: structure constants overflow");
  s.denom = den.get_si();
  for (std::size_t ij = 0; ij < d * d; ++ij)
    for (std::size_t k = 0; k < d; ++k) {
      Rational x = coords[ij][k] * Rational(den);
      if (!x.get_num().fits_slong_p())
        throw VerificationError("sum_of_squares: structure constants overflow");
      s.c[ij * d + k] = x.get_num().get_si();
    }
  return s;
}

std::vector<i128> square(const Structure& s, const std::vector<i128>& x) {
  std::vector<i128> out(s.d, 0);
  for (std::size_t i = 0; i < s.d; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < s.d; ++j) {
      if (x[j] == 0) continue;
      const i128 p = x[i] * x[j];
      for (std::size_t k = 0; k < s.d; ++k) out[k] += p * s.at(i, j, k);
    }
  }
  return out;
}

void digits(std::size_t idx, std::size_t base, std::size_t d, std::vector<std::size_t>& out) {
  out.assign(d, 0);
  for (std::size_t i = d; i-- > 0;) {
    out[i] = idx % base;
    idx /= base;
  }
}

std::vector<Subfield> candidate_subfields(const AlgElement& eps, Elem u, std::int64_t m, Elem v,
                                          std::int64_t v_order) {
  const GroupPtr& g = eps.group();
  const GroupTable& G = *g;
  const AlgElement one = AlgElement::one(g);

  // Real subfields Q(w + w^-1) of Q(v + v^-1), by distinct dimension.
  std::vector<std::vector<AlgElement>> r_spans;
  {
    std::set<std::size_t> seen_dims;
    for (std::int64_t w_order = v_order, j = 0; w_order >= 1; w_order /= 2, ++j) {
      const Elem w = G.pow(v, std::int64_t{1} << j);
      std::vector<AlgElement> span{one};
      for (std::int64_t i = 1; i <= w_order / 2; ++i)
        span.push_back(AlgElement::basis(g, G.pow(w, i)) + AlgElement::basis(g, G.pow(w, -i)));
      std::vector<linalg::RatVector> rows;
      for (const auto& x : span) rows.push_back((x * eps).dense());
      const std::size_t dim = linalg::rank(rows);
      if (seen_dims.insert(dim).second) r_spans.push_back(std::move(span));
      if (w_order == 1) break;
    }
  }

  std::vector<Subfield> fields;
  for (const auto& s : unit_subgroups(m)) {
    const bool real_l = m <= 2 || std::find(s.begin(), s.end(), m - 1) != s.end();
    std::vector<AlgElement> l_span;
    std::set<std::int64_t> covered;
    for (std::int64_t c = 0; c < std::max<std::int64_t>(m, 1); ++c) {
      if (covered.count(c)) continue;
      AlgElement period(g);
      for (auto x : s) {
        const auto cs = nt::mod(c * x, std::max<std::int64_t>(m, 1));
        covered.insert(cs);
        period += AlgElement::basis(g, G.pow(u, cs));
      }
      l_span.push_back(std::move(period));
    }
    for (const auto& r_span : r_spans) {
      Subfield f{s.size(), 0, {}, {}};
      std::vector<linalg::RatVector> rows;
      auto try_add = [&](AlgElement raw) {
        AlgElement red = raw * eps;
        if (red.is_zero()) return;
        rows.push_back(red.dense());
        if (linalg::rank(rows) < rows.size()) {
          rows.pop_back();
          return;
        }
        f.basis.push_back(std::move(raw));
        f.reduced.push_back(std::move(red));
      };
      try_add(one);
      for (const auto& l : l_span)
        for (const auto& r : r_span) try_add(l * r);
      std::vector<linalg::RatVector> rrows;
      for (const auto& x : r_span) rrows.push_back((x * eps).dense());
      f.r_dim = linalg::rank(rrows);
      // L_S·R_j is totally real when L_S is real.
      if (real_l) continue;
      fields.push_back(std::move(f));
    }
  }
  std::stable_sort(fields.begin(), fields.end(), [](const Subfield& a, const Subfield& b) {
    return a.basis.size() < b.basis.size();
  });
  return fields;
}

}  // namespace

SumOfSquares solve_sum_of_squares(const SSPRecord& rec, const CaseData& cd, int height_cap) {
  if (cd.tag != CaseTag::c2ii)
    throw PreconditionError("solve_sum_of_squares: only defined in case 2.ii");
  const GroupPtr& g = rec.H.group();
  const GroupTable& G = *g;
  const Elem u = G.pow(cd.a2p, cd.index_2p);
  const Elem v = G.pow(cd.a2, std::int64_t{1} << cd.k);
  const std::int64_t v_order = std::int64_t{1} << (cd.n - cd.k);
  const AlgElement& eps = rec.eps;
  const AlgElement one = AlgElement::one(g);
  const Rational order_g(static_cast<long>(G.order()));

  const auto fields = candidate_subfields(eps, u, cd.m_odd, v, v_order);
  std::vector<Structure> structures;
  for (const auto& f : fields) structures.push_back(structure_constants(f));

  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const Subfield& f = fields[fi];
    const Structure& s = structures[fi];
    for (int h = 1; h <= height_cap; ++h) {
      const auto values = height_values(h);
      Integer lcm_den = 1;
      for (const auto& x : values) lcm_den = lcm(lcm_den, Integer(x.get_den()));
      const i128 L = lcm_den.get_si();
      std::vector<i128> scaled;
      for (const auto& x : values)
        scaled.push_back(Rational(x * Rational(lcm_den)).get_num().get_si());
      const std::size_t base = values.size();
      const std::size_t d = s.d;
      std::size_t total = 1;
      bool too_big = false;
      for (std::size_t i = 0; i < d; ++i) {
        if (total > kSideBudget / base) {
          too_big = true;
          break;
        }
        total *= base;
      }
      if (too_big) break;

      std::vector<std::size_t> dig;
      std::vector<i128> x(d);
      auto vector_at = [&](std::size_t idx) {
        digits(idx, base, d, dig);
        for (std::size_t i = 0; i < d; ++i) x[i] = scaled[dig[i]];
        return x;
      };
      // Right side: -y^2, the left side x^2 + D·L^2.
      std::vector<std::pair<std::uint64_t, std::uint32_t>> right(total);
      for (std::size_t idx = 0; idx < total; ++idx) {
        auto y2 = square(s, vector_at(idx));
        for (auto& c : y2) c = -c;
        right[idx] = {hash_vec(y2), static_cast<std::uint32_t>(idx)};
      }
      std::sort(right.begin(), right.end());
      auto element = [&](std::size_t idx) {
        digits(idx, base, d, dig);
        AlgElement e(g);
        for (std::size_t i = 0; i < d; ++i)
          if (sgn(values[dig[i]]) != 0) e += f.basis[i] * values[dig[i]];
        return e;
      };
      for (std::size_t idx = 0; idx < total; ++idx) {
        auto lhs = square(s, vector_at(idx));
        lhs[0] += s.denom * L * L;  // basis[0] = 1
        const std::uint64_t hv = hash_vec(lhs);
        auto it = std::lower_bound(right.begin(), right.end(), std::pair{hv, std::uint32_t{0}});
        for (; it != right.end() && it->first == hv; ++it) {
          auto y2 = square(s, vector_at(it->second));
          bool eq = true;
          for (std::size_t k = 0; k < d && eq; ++k) eq = -y2[k] == lhs[k];
          if (!eq) continue;
          AlgElement xe = element(idx);
          AlgElement ye = element(it->second);
          if (!((one + xe * xe + ye * ye) * eps).is_zero())
            throw VerificationError("sum_of_squares: coordinate match is not a solution");
          const AlgElement beta = detail::build_beta(rec, cd, &xe, &ye);
          if (!has_integer_coeffs(beta * order_g)) continue;
          return SumOfSquares{std::move(xe), std::move(ye), h, d};
        }
      }
    }
  }
  throw VerificationError("sum_of_squares: no solution up to height " +
                          std::to_string(height_cap) + " for " + G.name());
}

}  // namespace qga
