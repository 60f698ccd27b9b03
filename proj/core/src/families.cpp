#include "qga/families.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "qga/errors.hpp"
#include "qga/numtheory.hpp"

namespace qga {

namespace {

/// Builds a table from a normal-form multiplication on indices 0..order-1
/// with 0 as the identity.
GroupPtr from_normal_form(std::string name, std::size_t order,
                          const std::function<Elem(Elem, Elem)>& mul,
                          std::vector<Elem> gens) {
  std::vector<Elem> product(order * order);
  for (Elem x = 0; x < order; ++x) {
    for (Elem y = 0; y < order; ++y) product[x * order + y] = mul(x, y);
  }
  return make_group(std::move(name), order, std::move(product), std::move(gens));
}

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) {
    r *= b;
    if (r > (std::int64_t{1} << 40)) throw CapExceeded("group order overflows");
  }
  return r;
}

void check_cap(std::int64_t order, std::size_t cap) {
  if (order > static_cast<std::int64_t>(cap))
    throw CapExceeded("group order " + std::to_string(order) + " exceeds cap " +
                      std::to_string(cap));
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// a^i b^j c^l with a of order an, b of order bn, c^2 = a^c2 (c absent when
/// cn == 1), b^-1 a b = a^r and c^-1 a c = a^-1.
GroupPtr metacyclic(std::string name, std::int64_t an, std::int64_t bn, std::int64_t cn,
                    std::int64_t r, std::int64_t c2) {
  const std::int64_t rinv = nt::powmod(r, nt::mult_order(r, an) - 1, an);
  std::vector<std::int64_t> rinv_pow(bn);
  rinv_pow[0] = 1 % an;
  for (std::int64_t j = 1; j < bn; ++j) rinv_pow[j] = rinv_pow[j - 1] * rinv % an;
  const auto order = static_cast<std::size_t>(an * bn * cn);
  auto mul = [=](Elem x, Elem y) -> Elem {
    const std::int64_t i = x % an, j = (x / an) % bn, l = x / (an * bn);
    const std::int64_t i2 = y % an, j2 = (y / an) % bn, l2 = y / (an * bn);
    std::int64_t t = i2 * rinv_pow[j] % an;
    if (l) t = -t;
    std::int64_t ni = i + t;
    std::int64_t nl = l + l2;
    if (nl == 2) {
      nl = 0;
      ni += c2;
    }
    ni = nt::mod(ni, an);
    const std::int64_t nj = (j + j2) % bn;
    return static_cast<Elem>(ni + an * (nj + bn * nl));
  };
  std::vector<Elem> gens;
  if (an > 1) gens.push_back(1);
  if (bn > 1) gens.push_back(static_cast<Elem>(an));
  if (cn > 1) gens.push_back(static_cast<Elem>(an * bn));
  return from_normal_form(std::move(name), order, mul, std::move(gens));
}

std::vector<std::int64_t> parse_ints(std::string_view body, std::size_t count,
                                     std::string_view what) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = body.find(',', pos);
    std::string_view tok = body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw SpecError("malformed integer in " + std::string(what) + " spec: '" + std::string(tok) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.size() != count)
    throw SpecError(std::string(what) + " spec expects " + std::to_string(count) + " parameters");
  return out;
}

void check_p1(std::int64_t p, std::int64_t n, std::int64_t k, std::int64_t r) {
  if (!is_prime(p)) throw SpecError("p1: p must be prime");
  if (n < 1 || k < 0) throw SpecError("p1: need n >= 1 and k >= 0");
  const std::int64_t pn = ipow(p, n);
  const std::int64_t rr = nt::mod(r, pn);
  if (std::gcd(rr, p) != 1) throw SpecError("p1: r must be coprime to p");
  if (nt::powmod(rr, ipow(p, k), pn) != 1) throw SpecError("p1: r^(p^k) must be 1 mod p^n");
  if (rr == 1 % pn) {
    if (k != 0) throw SpecError("p1: r = 1 requires k = 0 (<a> must be maximal abelian)");
    return;
  }
  const bool generic = nt::valuation(rr - 1, p) == n - k;
  const bool two_branch = p == 2 && rr % 4 == 3;
  if (!generic && !two_branch)
    throw SpecError("p1: need v_p(r-1) = n-k, or p = 2 and r != 1 mod 4");
}

void check_p23(std::string_view tag, std::int64_t n, std::int64_t k, std::int64_t r) {
  if (n < 2 || k < 0) throw SpecError(std::string(tag) + ": need n >= 2 and k >= 0");
  const std::int64_t an = ipow(2, n);
  const std::int64_t rr = nt::mod(r, an);
  if (rr % 4 != 1) throw SpecError(std::string(tag) + ": r must be 1 mod 4");
  if (nt::powmod(rr, ipow(2, k), an) != 1)
    throw SpecError(std::string(tag) + ": r^(2^k) must be 1 mod 2^n");
}

std::vector<std::vector<std::uint32_t>> parse_permutations(std::string_view body) {
  std::vector<std::vector<std::uint32_t>> gens;
  std::vector<std::vector<std::uint32_t>> cycles;  // cycles of the current generator
  std::size_t i = 0;
  auto flush = [&]() {
    std::uint32_t degree = 0;
    for (const auto& c : cycles) {
      for (auto x : c) degree = std::max(degree, x);
    }
    std::vector<std::uint32_t> img(degree + 1);
    for (std::uint32_t x = 0; x <= degree; ++x) img[x] = x;
    std::vector<char> used(degree + 1, 0);
    for (const auto& c : cycles) {
      for (std::size_t t = 0; t < c.size(); ++t) {
        if (used[c[t]]++) throw SpecError("perm: point repeated within a generator");
        img[c[t]] = c[(t + 1) % c.size()];
      }
    }
    gens.push_back(std::move(img));
    cycles.clear();
  };
  bool any = false;
  while (i < body.size()) {
    const char ch = body[i];
    if (ch == ' ') {
      ++i;
    } else if (ch == '(') {
      const std::size_t close = body.find(')', i);
      if (close == std::string_view::npos) throw SpecError("perm: unbalanced parenthesis");
      std::string inner(body.substr(i + 1, close - i - 1));
      for (auto& c : inner) {
        if (c == ',') c = ' ';
      }
      std::istringstream in(inner);
      std::vector<std::uint32_t> cyc;
      std::string tok;
      while (in >> tok) {
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0 || v > 4096)
          throw SpecError("perm: bad point '" + tok + "'");
        cyc.push_back(v);
      }
      if (cyc.empty()) throw SpecError("perm: empty cycle");
      cycles.push_back(std::move(cyc));
      any = true;
      i = close + 1;
    } else if (ch == ',') {
      if (!any) throw SpecError("perm: empty generator");
      flush();
      any = false;
      ++i;
    } else {
      throw SpecError(std::string("perm: unexpected character '") + ch + "'");
    }
  }
  if (!any) throw SpecError("perm: empty generator");
  flush();
  return gens;
}

}  // namespace

GroupPtr cyclic_group(std::int64_t n) {
  if (n < 1) throw SpecError("cyclic: n must be positive");
  const auto order = static_cast<std::size_t>(n);
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  return from_normal_form("cyclic:" + std::to_string(n), order,
                          [n](Elem x, Elem y) { return static_cast<Elem>((x + y) % n); },
                          std::move(gens));
}

GroupPtr dihedral_group(std::int64_t n) {
  if (n < 4 || n % 2) throw SpecError("dihedral: n must be even and >= 4");
  const std::int64_t m = n / 2;
  return metacyclic("dihedral:" + std::to_string(n), m, 2, 1, m - 1, 0);
}

GroupPtr quaternion_group(std::int64_t n) {
  if (n < 8 || nt::log_exact(n, 2) < 0) throw SpecError("quaternion: n must be a power of 2, >= 8");
  const std::int64_t m = n / 2;
  return metacyclic("quaternion:" + std::to_string(n), m, 1, 2, 1, m / 2);
}

GroupPtr p1_group(std::int64_t p, std::int64_t n, std::int64_t k, std::int64_t r) {
  check_p1(p, n, k, r);
  const std::int64_t pn = ipow(p, n);
  return metacyclic("p1:" + std::to_string(p) + "," + std::to_string(n) + "," + std::to_string(k) +
                        "," + std::to_string(r),
                    pn, ipow(p, k), 1, nt::mod(r, pn), 0);
}

GroupPtr p2_group(std::int64_t n, std::int64_t k, std::int64_t r) {
  check_p23("p2", n, k, r);
  const std::int64_t an = ipow(2, n);
  return metacyclic("p2:" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(r),
                    an, ipow(2, k), 2, nt::mod(r, an), 0);
}

GroupPtr p3_group(std::int64_t n, std::int64_t k, std::int64_t r) {
  check_p23("p3", n, k, r);
  const std::int64_t an = ipow(2, n);
  return metacyclic("p3:" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(r),
                    an, ipow(2, k), 2, nt::mod(r, an), an / 2);
}

GroupPtr sl23_group() {
  using Mat = std::array<int, 4>;
  auto mul = [](const Mat& x, const Mat& y) {
    return Mat{(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3,
               (x[2] * y[0] + x[3] * y[2]) % 3, (x[2] * y[1] + x[3] * y[3]) % 3};
  };
  const Mat id{1, 0, 0, 1};
  const Mat gx{0, 2, 1, 0}, gy{1, 1, 1, 2}, ga{1, 1, 0, 1};
  std::vector<Mat> elems{id};
  std::map<Mat, Elem> index{{id, 0}};
  const std::array<Mat, 3> gens{gx, gy, ga};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : gens) {
      Mat p = mul(elems[i], s);
      if (index.emplace(p, static_cast<Elem>(elems.size())).second) elems.push_back(p);
    }
  }
  const std::size_t n = elems.size();
  std::vector<Elem> product(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) product[i * n + j] = index.at(mul(elems[i], elems[j]));
  }
  return make_group("sl23", n, std::move(product), {index.at(gx), index.at(gy), index.at(ga)});
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, std::size_t cap) {
  const std::size_t na = a->order(), nb = b->order();
  check_cap(static_cast<std::int64_t>(na * nb), cap);
  std::vector<Elem> gens;
  for (Elem g : a->generators()) gens.push_back(static_cast<Elem>(g * nb));
  for (Elem g : b->generators()) gens.push_back(g);
  return from_normal_form(
      a->name() + "*" + b->name(), na * nb,
      [&](Elem x, Elem y) {
        return static_cast<Elem>(a->mul(x / nb, y / nb) * nb + b->mul(x % nb, y % nb));
      },
      std::move(gens));
}

GroupPtr permutation_group(const std::vector<std::vector<std::uint32_t>>& generators,
                           std::size_t cap, std::string name) {
  std::size_t degree = 0;
  for (const auto& g : generators) degree = std::max(degree, g.size());
  auto pad = [degree](std::vector<std::uint32_t> p) {
    for (std::size_t x = p.size(); x < degree; ++x) p.push_back(static_cast<std::uint32_t>(x));
    return p;
  };
  std::vector<std::vector<std::uint32_t>> gens;
  for (const auto& g : generators) gens.push_back(pad(g));
  auto compose = [](const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
    std::vector<std::uint32_t> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
    return r;
  };
  std::vector<std::uint32_t> id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::vector<std::vector<std::uint32_t>> elems{id};
  std::map<std::vector<std::uint32_t>, Elem> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : gens) {
      auto p = compose(elems[i], s);
      if (index.emplace(p, static_cast<Elem>(elems.size())).second) {
        elems.push_back(std::move(p));
        check_cap(static_cast<std::int64_t>(elems.size()), cap);
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Elem> product(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) product[i * n + j] = index.at(compose(elems[i], elems[j]));
  }
  std::vector<Elem> gen_idx;
  for (const auto& s : gens) {
    const Elem e = index.at(s);
    if (e != 0 && std::find(gen_idx.begin(), gen_idx.end(), e) == gen_idx.end()) gen_idx.push_back(e);
  }
  return make_group(std::move(name), n, std::move(product), std::move(gen_idx));
}

GroupPtr table_group_from_file(const std::string& path, std::size_t cap) {
  std::ifstream in(path);
  if (!in) throw SpecError("table: cannot open '" + path + "'");
  long long order = 0;
  if (!(in >> order) || order < 1) throw SpecError("table: missing or invalid order");
  check_cap(order, cap);
  const auto n = static_cast<std::size_t>(order);
  std::vector<Elem> product(n * n);
  for (auto& x : product) {
    long long v = 0;
    if (!(in >> v)) throw SpecError("table: too few entries");
    if (v < 0 || v >= order) throw SpecError("table: entry out of range");
    x = static_cast<Elem>(v);
  }
  std::string extra;
  if (in >> extra) throw SpecError("table: trailing data");
  return make_group("table:" + path, n, std::move(product), {});
}

GroupPtr build_family(std::string_view spec, std::size_t cap) {
  const std::size_t colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "sl23") {
    if (colon != std::string_view::npos) throw SpecError("sl23 takes no parameters");
    check_cap(24, cap);
    return sl23_group();
  }
  if (colon == std::string_view::npos) throw SpecError("malformed group spec: '" + std::string(spec) + "'");
  GroupPtr g;
  if (head == "cyclic") {
    const auto v = parse_ints(body, 1, head);
    if (v[0] < 1) throw SpecError("cyclic: n must be positive");
    check_cap(v[0], cap);
    g = cyclic_group(v[0]);
  } else if (head == "dihedral") {
    const auto v = parse_ints(body, 1, head);
    if (v[0] < 4 || v[0] % 2) throw SpecError("dihedral: n must be even and >= 4");
    check_cap(v[0], cap);
    g = dihedral_group(v[0]);
  } else if (head == "quaternion") {
    const auto v = parse_ints(body, 1, head);
    if (v[0] < 8 || nt::log_exact(v[0], 2) < 0) throw SpecError("quaternion: n must be a power of 2, >= 8");
    check_cap(v[0], cap);
    g = quaternion_group(v[0]);
  } else if (head == "p1") {
    const auto v = parse_ints(body, 4, head);
    check_p1(v[0], v[1], v[2], v[3]);
    check_cap(ipow(v[0], v[1] + v[2]), cap);
    g = p1_group(v[0], v[1], v[2], v[3]);
  } else if (head == "p2" || head == "p3") {
    const auto v = parse_ints(body, 3, head);
    check_p23(head, v[0], v[1], v[2]);
    check_cap(ipow(2, v[0] + v[1] + 1), cap);
    g = head == "p2" ? p2_group(v[0], v[1], v[2]) : p3_group(v[0], v[1], v[2]);
  } else if (head == "product") {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
      const std::size_t star = body.find('*', pos);
      parts.push_back(body.substr(pos, star == std::string_view::npos ? body.npos : star - pos));
      if (star == std::string_view::npos) break;
      pos = star + 1;
    }
    if (parts.size() < 2) throw SpecError("product: expected SPEC*SPEC");
    std::int64_t total = 1;
    std::vector<GroupPtr> factors;
    for (auto part : parts) {
      if (part.empty()) throw SpecError("product: empty factor");
      factors.push_back(build_family(part, cap));
      total *= static_cast<std::int64_t>(factors.back()->order());
      check_cap(total, cap);
    }
    g = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, factors[i], cap);
  } else if (head == "perm") {
    g = permutation_group(parse_permutations(body), cap, std::string(spec));
  } else if (head == "table") {
    if (body.empty()) throw SpecError("table: missing path");
    g = table_group_from_file(std::string(body), cap);
  } else {
    throw SpecError("unknown group family '" + std::string(head) + "'");
  }
  return g;
}

}  // namespace qga
