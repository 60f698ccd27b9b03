#pragma once

// ε(H,K), e(G,H,K), Shoda / strong Shoda pairs and the search for the
// primitive central idempotents of QG.

#include <vector>

#include "qga/algebra.hpp"
#include "qga/group.hpp"

namespace qga {

/// Π (K̂ − M̂) over the minimal normal subgroups M/K of H/K; ε(K,K) = K̂.
/// Throws PreconditionError unless K is normal in H.
AlgElement epsilon(const Subgroup& h, const Subgroup& k);

/// Cen_G(α) = {g : g^-1 α g = α}.
Subgroup centralizer_of_element(const AlgElement& a);

/// Minimal-index representatives of the right cosets S·g, ascending.
std::vector<Elem> right_transversal(const Subgroup& s);

/// Sum of the distinct G-conjugates of ε(H,K).
AlgElement e_of_pair(const Subgroup& h, const Subgroup& k);

/// Minimal-index element of H whose coset generates H/K, or std::nullopt when
/// H/K is not cyclic. K must be normal in H.
std::optional<Elem> cyclic_generator(const Subgroup& h, const Subgroup& k);

bool is_shoda_pair(const Subgroup& h, const Subgroup& k);

struct SSPRecord {
  Subgroup H;
  Subgroup K;
  AlgElement eps;
  AlgElement e;
  Subgroup normalizer_of_K;  ///< N = N_G(K)
  Subgroup stabilizer;       ///< Cen_G(ε); equals N for strong pairs
  /// Minimal-index representatives of the right cosets N·t; the distinct
  /// conjugates of ε are ε^t for t in this list.
  std::vector<Elem> transversal;
  Elem a = 0;  ///< lift of a generator of H/K (minimal index)

  std::size_t m() const { return H.order() / K.order(); }
  std::size_t r() const { return transversal.size(); }
};

/// Full definition-level check. Throws VerificationError when the pair is
/// strong Shoda but Cen_G(ε) != N_G(K) (impossible in theory: a defect).
bool is_strong_shoda_pair(const Subgroup& h, const Subgroup& k);

/// Record for a pair already known (or claimed) to be strong Shoda; returns
/// std::nullopt if the pair fails the check.
std::optional<SSPRecord> make_ssp_record(const Subgroup& h, const Subgroup& k);

/// H1^g ∩ K2 = K1^g ∩ H2 for some g.
bool pairs_equivalent(const Subgroup& h1, const Subgroup& k1, const Subgroup& h2,
                      const Subgroup& k2);

struct PairCollision {
  std::size_t record;  ///< index into SSPSearch::records
  Subgroup H;
  Subgroup K;
};

struct SSPSearch {
  std::vector<SSPRecord> records;  ///< one per distinct e
  std::vector<PairCollision> collisions;  ///< other pairs producing a recorded e
  bool complete = false;  ///< Σ e == 1
};

struct SearchOptions {
  std::size_t cap = kDefaultOrderCap;
  unsigned jobs = 1;
};

/// Candidates: K over conjugacy-class representatives of subgroups, H = K<h>
/// for h in N_G(K), kept when H ⊴ N_G(K) and H/K is maximal abelian in
/// N_G(K)/K; each survivor then passes the full strong Shoda check.
SSPSearch strong_shoda_pairs(const GroupPtr& group, const SearchOptions& opts = {});

struct IdempotentTerm {
  Rational coeff;
  Subgroup H;
  Subgroup K;
};

/// Σ coeff_i · e(G, H_i, K_i).
AlgElement idempotent_combination(const GroupPtr& group, const std::vector<IdempotentTerm>& terms);
/// The combination is a central idempotent.
bool verify_central_idempotent_combination(const GroupPtr& group,
                                           const std::vector<IdempotentTerm>& terms);

}  // namespace qga
