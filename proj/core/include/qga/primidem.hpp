#pragma once

// Primitive idempotents and matrix units of QGe for nilpotent G: presentation
// recognition of cyclic-by-abelian p-group sections, the four-way case split,
// the sum-of-two-squares search and the resulting matrix-unit systems.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qga/algebra.hpp"
#include "qga/group.hpp"
#include "qga/shoda.hpp"

namespace qga {

enum class PresentationTag { P1, P2, P3 };
const char* to_string(PresentationTag t);

/// P1: <a,b | a^(p^n) = b^(p^k) = 1, b^-1 a b = a^r>
/// P2: adds c with c^2 = 1, bc = cb, c^-1 a c = a^-1
/// P3: as P2 with c^2 = a^(2^(n-1))
/// b is the identity when k = 0; c is the identity for P1.
struct Presentation {
  PresentationTag tag = PresentationTag::P1;
  std::int64_t p = 2;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t r = 1;
  Elem a = 0;
  Elem b = 0;
  Elem c = 0;
};

/// Constructive recognition for a p-group Q with a cyclic, normal, maximal
/// abelian subgroup A. `preferred_a` must generate A when given. Throws
/// PreconditionError when the hypotheses fail and VerificationError when no
/// presentation is found (a defect).
Presentation recognize_presentation(const GroupPtr& q, const Subgroup& a_sub,
                                    std::optional<Elem> preferred_a = std::nullopt);
/// Every defining relation of `pres` holds in q and |q| matches.
bool presentation_holds(const GroupPtr& q, const Presentation& pres);

enum class CaseTag { c1i, c1ii, c2i, c2ii };
const char* to_string(CaseTag t);

struct SumOfSquares {
  AlgElement x;
  AlgElement y;
  int height = 0;
  std::size_t subfield_dim = 0;
};

/// Everything is expressed by elements of G (lifts from N/K).
struct CaseData {
  CaseTag tag = CaseTag::c1i;
  Elem a2 = 0;
  Elem a2p = 0;
  Elem b2p = 0;
  std::optional<Elem> b2;
  std::optional<Elem> c2;
  std::optional<Subgroup> M2;  ///< preimage in G of the complement
  Subgroup B2p;                ///< preimage in G of <b_2'>
  std::optional<Subgroup> B2;  ///< preimage in G of <b_2> (case 2)
  Presentation presentation;   ///< of N_2/K, with elements lifted to G
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t r = 1;
  std::int64_t m_odd = 1;      ///< [H_2':K] / [N_2':H_2']
  std::int64_t index_2p = 1;   ///< [N_2':H_2']
  std::size_t order_a2 = 1;    ///< |H_2/K|
  std::size_t order_a2p = 1;   ///< |H_2'/K|
  bool quaternion_split = false;    ///< quaternion splitting criterion (2-case only)
  std::optional<SumOfSquares> xy;
};

struct CaseOptions {
  int xy_height_cap = 6;
  bool solve_xy = true;  ///< run the sum-of-squares search in case 2.ii
};

/// Throws PreconditionError for non-nilpotent G; VerificationError on any
/// internal inconsistency.
CaseData classify_case(const SSPRecord& rec, const CaseOptions& opts = {});

/// (x, y) in Q[u, v + v^-1] with (1 + x^2 + y^2)·ε = 0, u = a_2'^[N_2':H_2'],
/// v = a_2^(2^k). Candidates must also make |G|·β_e integral. Throws
/// PreconditionError unless the case is 2.ii and VerificationError when the
/// height cap is exhausted.
SumOfSquares solve_sum_of_squares(const SSPRecord& rec, const CaseData& cd, int height_cap = 6);

struct MatrixUnitSystem {
  SSPRecord ssp;
  CaseData cs;
  std::vector<Elem> T;      ///< T_e = T_2' T_2 T_G/N
  std::vector<Elem> T2p;
  std::vector<Elem> T2;
  std::vector<Elem> TGN;
  AlgElement beta;          ///< β_e
  std::vector<AlgElement> idempotents;  ///< t^-1 β_e t, in T order
  std::size_t qdim = 0;     ///< dim_Q QGe
  std::size_t field_dim = 0;     ///< φ(m)/[N:H]
  std::size_t division_dim = 0;  ///< field_dim, or 4·field_dim in case 2.i

  /// E_{ij} = T[i]^-1 β_e T[j]
  AlgElement unit(std::size_t i, std::size_t j) const;
};

/// Builds and verifies: idempotent, pairwise orthogonal, sum e, and
/// |T_e|^2 · division_dim = qdim. Throws VerificationError on failure.
MatrixUnitSystem primitive_idempotents(const SSPRecord& rec, const CaseOptions& opts = {});

/// All E_{tt'} keyed by (i, j) positions in T. Verifies the matrix-unit
/// relations: the reduced form β t_j t_k^-1 β = δ_jk β always, and every
/// product E_{t1t2}E_{t3t4} when `exhaustive`. Throws VerificationError.
std::map<std::pair<std::size_t, std::size_t>, AlgElement> matrix_units(
    const MatrixUnitSystem& sys, bool exhaustive = false);

/// The conjugates x_i^-1 · base · x_i are pairwise orthogonal. Each x_i must
/// be invertible in QGε (PreconditionError otherwise).
bool verify_trace_orthogonality(const AlgElement& eps, const AlgElement& base,
                                const std::vector<AlgElement>& xs);

}  // namespace qga
