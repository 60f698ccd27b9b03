#include "qga/shoda.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_set>

#include "qga/errors.hpp"
#include "qga/numtheory.hpp"

namespace qga {

namespace {

/// Order of hK in H/K.
std::size_t coset_order(const GroupTable& g, Elem h, const Subgroup& k) {
  std::size_t j = 1;
  Elem x = h;
  while (!k.contains(x)) {
    x = g.mul(x, h);
    ++j;
  }
  return j;
}

bool pair_key_less(const Subgroup& h1, const Subgroup& k1, const Subgroup& h2,
                   const Subgroup& k2) {
  if (h1.order() != h2.order()) return h1.order() > h2.order();
  if (h1.members() != h2.members()) return h1.members() < h2.members();
  return k1.members() < k2.members();
}

/// Candidate records for one K.
std::vector<SSPRecord> candidates_for(const Subgroup& k) {
  const GroupPtr& group = k.group();
  const GroupTable& g = *group;
  const Subgroup n = normalizer(k);
  std::vector<Subgroup> hs;
  std::unordered_set<std::string> seen;
  for (Elem x : n.members()) {
    Subgroup h = join(k, cyclic_subgroup(group, x));
    std::string key(reinterpret_cast<const char*>(h.mask().data()), h.mask().size() * 8);
    if (seen.insert(std::move(key)).second) hs.push_back(std::move(h));
  }
  std::sort(hs.begin(), hs.end());
  std::vector<SSPRecord> out;
  for (const auto& h : hs) {
    auto a = cyclic_generator(h, k);
    if (!a) continue;
    if (!is_normal_in(h, n)) continue;
    bool maximal = true;
    for (Elem x : n.members()) {
      if (!h.contains(x) && k.contains(g.comm(*a, x))) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    if (auto rec = make_ssp_record(h, k)) out.push_back(std::move(*rec));
  }
  return out;
}

}  // namespace

std::optional<Elem> cyclic_generator(const Subgroup& h, const Subgroup& k) {
  const GroupTable& g = *h.group();
  const std::size_t m = h.order() / k.order();
  for (Elem x : h.members()) {
    if (coset_order(g, x, k) == m) return x;
  }
  return std::nullopt;
}

AlgElement epsilon(const Subgroup& h, const Subgroup& k) {
  if (!k.is_subset_of(h) || !is_normal_in(k, h))
    throw PreconditionError("epsilon: K is not a normal subgroup of H");
  const GroupPtr& group = h.group();
  if (h == k) return hat(k);
  const std::size_t m = h.order() / k.order();
  if (auto a = cyclic_generator(h, k)) {
    AlgElement prod = AlgElement::one(group);
    for (auto p : nt::prime_factors(static_cast<std::int64_t>(m))) {
      const Elem x = group->pow(*a, static_cast<std::int64_t>(m) / p);
      std::vector<AlgElement::Term> t;
      t.emplace_back(0, Rational(1));
      Elem y = 0;
      for (std::int64_t i = 0; i < p; ++i) {
        t.emplace_back(y, Rational(-1, static_cast<unsigned long>(p)));
        y = group->mul(y, x);
      }
      prod = prod * AlgElement(group, std::move(t));
    }
    return hat(k) * prod;
  }
  Embedding emb = subgroup_table(h);
  QuotientMap q = quotient(emb.pull(k));
  const AlgElement kh = hat(k);
  AlgElement eps;
  bool first = true;
  for (const auto& mq : minimal_normal_subgroups(q.target)) {
    AlgElement factor = kh - hat(emb.push(q.preimage(mq)));
    eps = first ? factor : eps * factor;
    first = false;
  }
  return eps;
}

Subgroup centralizer_of_element(const AlgElement& a) {
  std::vector<Elem> m;
  for (Elem g = 0; g < a.group()->order(); ++g) {
    if (conjugate(a, g) == a) m.push_back(g);
  }
  return Subgroup(a.group(), std::move(m));
}

std::vector<Elem> right_transversal(const Subgroup& s) {
  const GroupTable& g = *s.group();
  std::vector<char> covered(g.order(), 0);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (Elem y : s.members()) covered[g.mul(y, x)] = 1;
  }
  return reps;
}

AlgElement e_of_pair(const Subgroup& h, const Subgroup& k) {
  const AlgElement eps = epsilon(h, k);
  AlgElement e(h.group());
  for (Elem t : right_transversal(centralizer_of_element(eps))) e += conjugate(eps, t);
  return e;
}

bool is_shoda_pair(const Subgroup& h, const Subgroup& k) {
  if (!k.is_subset_of(h) || !is_normal_in(k, h))
    throw PreconditionError("is_shoda_pair: K is not a normal subgroup of H");
  if (!cyclic_generator(h, k)) return false;
  const GroupTable& g = *h.group();
  for (Elem x = 0; x < g.order(); ++x) {
    if (h.contains(x)) continue;
    bool premise = true;
    for (Elem y : h.members()) {
      const Elem c = g.comm(y, x);
      if (h.contains(c) && !k.contains(c)) {
        premise = false;
        break;
      }
    }
    if (premise) return false;
  }
  return true;
}

std::optional<SSPRecord> make_ssp_record(const Subgroup& h, const Subgroup& k) {
  if (!k.is_subset_of(h) || !is_normal_in(k, h)) return std::nullopt;
  auto a = cyclic_generator(h, k);
  if (!a) return std::nullopt;
  Subgroup n = normalizer(k);
  if (!is_normal_in(h, n)) return std::nullopt;
  if (!is_shoda_pair(h, k)) return std::nullopt;
  AlgElement eps = epsilon(h, k);
  Subgroup cen = centralizer_of_element(eps);
  std::vector<Elem> t = right_transversal(cen);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(eps * conjugate(eps, t[i])).is_zero()) return std::nullopt;
  }
  if (!(cen == n))
    throw VerificationError("strong Shoda pair with Cen_G(eps) != N_G(K)");
  SSPRecord rec;
  rec.H = h;
  rec.K = k;
  rec.e = AlgElement(h.group());
  for (Elem x : t) rec.e += conjugate(eps, x);
  rec.eps = std::move(eps);
  rec.normalizer_of_K = std::move(n);
  rec.stabilizer = std::move(cen);
  rec.transversal = std::move(t);
  rec.a = *a;
  return rec;
}

bool is_strong_shoda_pair(const Subgroup& h, const Subgroup& k) {
  return make_ssp_record(h, k).has_value();
}

bool pairs_equivalent(const Subgroup& h1, const Subgroup& k1, const Subgroup& h2,
                      const Subgroup& k2) {
  for (Elem g = 0; g < h1.group()->order(); ++g) {
    if (intersect(conjugate(h1, g), k2) == intersect(conjugate(k1, g), h2)) return true;
  }
  return false;
}

SSPSearch strong_shoda_pairs(const GroupPtr& group, const SearchOptions& opts) {
  const std::vector<Subgroup> subs = subgroups(group, opts.cap);
  std::vector<Subgroup> reps;
  {
    std::unordered_set<std::string> seen;
    auto key = [](const Subgroup& s) {
      return std::string(reinterpret_cast<const char*>(s.mask().data()), s.mask().size() * 8);
    };
    for (const auto& s : subs) {
      if (seen.count(key(s))) continue;
      reps.push_back(s);
      for (Elem g = 0; g < group->order(); ++g) seen.insert(key(conjugate(s, g)));
    }
  }

  std::vector<std::vector<SSPRecord>> per_k(reps.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(reps.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < reps.size(); ++i) per_k[i] = candidates_for(reps[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&]() {
        try {
          for (std::size_t i = next++; i < reps.size(); i = next++) per_k[i] = candidates_for(reps[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<SSPRecord> all;
  for (auto& v : per_k) {
    for (auto& r : v) all.push_back(std::move(r));
  }
  std::sort(all.begin(), all.end(), [](const SSPRecord& x, const SSPRecord& y) {
    return pair_key_less(x.H, x.K, y.H, y.K);
  });

  SSPSearch out;
  for (auto& rec : all) {
    auto it = std::find_if(out.records.begin(), out.records.end(),
                           [&](const SSPRecord& r) { return r.e == rec.e; });
    if (it == out.records.end()) {
      out.records.push_back(std::move(rec));
    } else {
      out.collisions.push_back({static_cast<std::size_t>(it - out.records.begin()), rec.H, rec.K});
    }
  }
  AlgElement total(group);
  for (const auto& r : out.records) total += r.e;
  out.complete = total == AlgElement::one(group);
  return out;
}

AlgElement idempotent_combination(const GroupPtr& group, const std::vector<IdempotentTerm>& terms) {
  AlgElement sum(group);
  for (const auto& t : terms) sum += e_of_pair(t.H, t.K) * t.coeff;
  return sum;
}

bool verify_central_idempotent_combination(const GroupPtr& group,
                                           const std::vector<IdempotentTerm>& terms) {
  const AlgElement s = idempotent_combination(group, terms);
  return is_idempotent(s) && is_central(s);
}

}  // namespace qga
