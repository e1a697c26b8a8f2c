#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "latsmooth/basis.hpp"
#include "latsmooth/common.hpp"
#include "latsmooth/enumerate.hpp"
#include "latsmooth/geometry.hpp"
#include "latsmooth/rng.hpp"

namespace latsmooth {

// ---- transcripts ----

struct TranscriptMessage {
  std::string role;  // "verifier" | "prover"
  std::string type;  // "point", "bit", "hash", "verdict"
  Vec payload;
};

struct Transcript {
  std::vector<TranscriptMessage> messages;
  bool accept = false;
};

// Line-oriented record format: "role type v1 v2 ...", final line
// "verifier verdict accept|reject".
std::string serialize_transcript(const Transcript& t);

// ---- Gaussian Goldreich-Goldwasser protocol ----

enum class ProverKind { optimal, bdd, sabotage, random_coset };

ProverKind prover_kind_from_name(const std::string& name);

// Per-instance protocol state: the challenge lattice is the dual, and the
// prover strategies need its enumerator (plus a decoding radius for bdd).
class GggSession {
 public:
  GggSession(const Basis& basis, ProverKind kind, double bdd_alpha = 0.0, double bdd_eps = 0.0);

  Transcript round(Rng& rng);
  // accept indicator without transcript materialization
  bool round_accepts(Rng& rng);

  const Basis& dual() const { return dual_; }

 private:
  Basis dual_;
  ProverKind kind_;
  double bdd_radius_ = 0.0;
  double coset_radius_ = 0.0;
  Enumerator dual_en_;
  VoronoiTester dual_voronoi_;

  Vec prover_answer(const Vec& challenge, Rng& rng);
};

Transcript ggg_round(const Basis& basis, ProverKind kind, Rng& rng, double bdd_alpha = 0.0,
                     double bdd_eps = 0.0);

// Optimal-prover acceptance frequency; equals gamma(V(dual)) up to CI.
ProbEstimate ggg_accept_prob(const Basis& basis, std::uint64_t trials, std::uint64_t seed,
                             int workers = 1);

// Acceptance frequency of a given strategy (coupled to ggg_accept_prob by
// sharing the verifier's sample stream for equal seeds).
ProbEstimate ggg_strategy_accept_prob(const Basis& basis, ProverKind kind, std::uint64_t trials,
                                      std::uint64_t seed, double bdd_alpha = 0.0,
                                      double bdd_eps = 0.0, int workers = 1);

// Honest-verifier simulator: samples x, outputs (x mod dual, x, accept)
// without any prover.
Transcript ggg_simulate_szk(const Basis& basis, Rng& rng);

// ---- SPCom instance-dependent commitment ----

struct Commitment {
  Vec w;  // reduced mod 2B*
  HashFn h;
  // opening, retained separately from the (w, h) wire pair
  std::vector<std::uint8_t> z;
  Vec e;
  Vec unreduced;  // B* z + e, prior to reduction
  std::uint8_t bit = 0;
};

// Shared per-instance state: dual basis, doubled dual basis, noise radius
// r = (1/2) sqrt(n / 2 pi).
class SpcomContext {
 public:
  explicit SpcomContext(const Basis& basis);

  const Basis& basis() const { return basis_; }
  const Basis& dual() const { return dual_; }
  const Basis& dual2() const { return dual2_; }
  double noise_radius() const { return r_; }
  int dim() const { return basis_.dim(); }

  Commitment commit(int bit, Rng& rng) const;

  // Lattice points within the noise radius of the retained lift, as
  // coefficient vectors, plus their distinct mod-2 classes (bit masks).
  std::vector<std::uint32_t> opening_classes(const Commitment& c) const;
  std::uint64_t raw_candidate_count(const Commitment& c) const;

 private:
  Basis basis_, dual_, dual2_;
  double r_;
};

// Frequency of commitments whose noise lands in the pairwise ball-overlap
// region of the dual (upper-bounds ambiguous openability).
ProbEstimate spcom_binding_estimate(const Basis& basis, std::uint64_t trials, std::uint64_t seed,
                                    int workers = 1);

// E_w[ Delta(H | b=0, H | b=1) ] with the per-sample distance computed
// exactly by enumerating all 2^(n+1) hash functions over the mod-2 classes
// of the candidate set. Requires n <= 16.
ProbEstimate spcom_hiding_sd(const Basis& basis, std::uint64_t trials, std::uint64_t seed,
                             int workers = 1);

// Exact E_h |#{h(z_i)=0} - #{h(z_i)=1}| over the full hash family for a
// given multiset of mod-2 classes (test hook for the discrepancy values).
double hash_family_discrepancy(int n, const std::vector<std::uint32_t>& classes);

// ---- amplification ----

struct SchemeParams {
  enum class Kind { leaf, repetition, sharing };
  Kind kind = Kind::leaf;
  int k = 1;
  std::shared_ptr<const SchemeParams> child;
  double p = 0.0;  // hiding bound
  double q = 0.0;  // binding bound
};

SchemeParams leaf_params(double p, double q);
// repetition: (1-(1-p)^k)-hiding, q^k-binding; sharing: p^k-hiding,
// (1-(1-q)^k)-binding.
SchemeParams amplify(const SchemeParams& params, SchemeParams::Kind op, int k);

struct AmplifyStep {
  SchemeParams::Kind op;
  int k;
};

struct AmplifyPlan {
  bool converged = false;
  std::vector<AmplifyStep> steps;
  double p = 0.0, q = 0.0;  // final bookkeeping values
};

// Greedy alternation toward p, q <= target; fails (converged = false) when
// the 64-step cap runs out, reporting the final (p, q).
AmplifyPlan amplification_plan(double p, double q, double target);

SchemeParams apply_plan(double p, double q, const AmplifyPlan& plan);

// Two-message protocol: the verifier commits to a random bit through the
// composed scheme; the unbounded prover guesses it from the commitments by
// exhaustive opening search; accept iff the guess is right.
Transcript szk_protocol_run(const Basis& basis, const SchemeParams& params, Rng& rng);

ProbEstimate szk_accept_prob(const Basis& basis, const SchemeParams& params,
                             std::uint64_t trials, std::uint64_t seed, int workers = 1);

// Composed-scheme binding event (every leaf ambiguous), for the
// amplification bookkeeping checks.
ProbEstimate composed_binding_estimate(const Basis& basis, const SchemeParams& params,
                                       std::uint64_t trials, std::uint64_t seed, int workers = 1);

// ---- coAM shell protocol ----

struct ShellClaims {
  std::vector<std::uint64_t> counts;  // K_0 .. K_T
  double alpha = 0.0;
  double eps_y = 0.0;
  double eps_n = 0.0;  // filled in before the verdict
  double big_r = 0.0;  // R = n (1 + ln(1/epsY))
  int t_max = 0;       // T = ceil(ln sqrt(R) / ln(1+alpha))
};

// Exact shell cardinalities |S_i| of the dual lattice: S_0 = nonzero points
// with norm <= 1, S_i = ((1+a)^{i-1}, (1+a)^i] shells, truncated at sqrt(R).
ShellClaims coam_shell_counts(const Basis& basis, double alpha, double eps_y,
                              std::uint64_t budget = 0);

double coam_weighted_sum(const ShellClaims& claims);

// Final verifier test: sum K_i e^{-pi (1+a)^{2i}} >= (epsY + epsN)/2.
bool coam_verdict(const ShellClaims& claims);

// Members of one shell as fixed-point bit encodings of their coefficient
// vectors (16 bits per coordinate, two's complement).
std::vector<std::vector<std::uint8_t>> coam_shell_members(const Basis& basis, double alpha,
                                                          double eps_y, int shell_index,
                                                          std::uint64_t budget = 0);

// Toy set-size lower bound round: pairwise-independent hash to m bits with
// m = max(0, floor(log2(K/8))), random target, per-round accept when the
// target collects at least 6 member hits, majority over ceil(64/gamma)
// rounds. The constants are desk-scale calibrations.
bool gs_lower_bound(const std::vector<std::vector<std::uint8_t>>& members, std::uint64_t claim_k,
                    double gamma, Rng& rng);

// ---- BDD-prover decider ----

// Runs the GGG protocol with the bdd prover; YES when the rejection
// frequency stays below (epsY + epsN/(1+epsN))/2, CI-aware.
DecisionReport decide_gapspp_bdd(const Basis& basis, double eps_y, double eps_n, double alpha,
                                 std::uint64_t trials, std::uint64_t seed, int workers = 1);

}  // namespace latsmooth
