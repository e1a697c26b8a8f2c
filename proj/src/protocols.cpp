#include "latsmooth/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "latsmooth/gauss_sums.hpp"
#include "latsmooth/report.hpp"

namespace latsmooth {

// ---- transcripts ----

std::string serialize_transcript(const Transcript& t) {
  std::ostringstream os;
  for (const auto& m : t.messages) {
    os << m.role << ' ' << m.type;
    for (double v : m.payload) os << ' ' << format_real(v);
    os << '\n';
  }
  os << "verifier verdict " << (t.accept ? "accept" : "reject") << '\n';
  return os.str();
}

// ---- GGG ----

ProverKind prover_kind_from_name(const std::string& name) {
  if (name == "optimal") return ProverKind::optimal;
  if (name == "bdd") return ProverKind::bdd;
  if (name == "sabotage") return ProverKind::sabotage;
  if (name == "random-coset") return ProverKind::random_coset;
  throw std::invalid_argument("unknown prover strategy: " + name);
}

GggSession::GggSession(const Basis& basis, ProverKind kind, double bdd_alpha, double bdd_eps)
    : dual_(dual_basis(basis)), kind_(kind), dual_en_(dual_), dual_voronoi_(dual_) {
  if (kind == ProverKind::bdd) {
    // decoding radius alpha / eta_eps(lattice), since (dual)* is the input
    // lattice again
    bdd_radius_ = bdd_alpha / smoothing_parameter(basis, bdd_eps).eta;
  }
  if (kind == ProverKind::random_coset) {
    coset_radius_ = 1.01 * lambda1(dual_);
  }
}

Vec GggSession::prover_answer(const Vec& challenge, Rng& rng) {
  switch (kind_) {
    case ProverKind::optimal: {
      Vec v = dual_en_.closest(challenge);
      return sub(challenge, v);
    }
    case ProverKind::bdd: {
      Vec v = dual_en_.closest(challenge);
      if (norm(sub(challenge, v)) <= bdd_radius_ * (1.0 + 1e-12)) return sub(challenge, v);
      return challenge;  // decoding promise violated; claim the coset rep itself
    }
    case ProverKind::sabotage:
      return Vec(challenge.size(), 0.0);
    case ProverKind::random_coset: {
      // uniform pick among lattice points near the challenge
      Vec v0 = dual_en_.closest(challenge);
      const double radius = norm(sub(challenge, v0)) + coset_radius_;
      std::vector<std::vector<long long>> cands;
      dual_en_.enumerate(challenge, radius, 1u << 16,
                         [&](const Vec&, const std::vector<long long>& c) {
                           cands.push_back(c);
                           return true;
                         });
      const auto& pick = cands[rng.next_u64() % cands.size()];
      Vec v(challenge.size(), 0.0);
      for (std::size_t j = 0; j < pick.size(); ++j) {
        if (pick[j] == 0) continue;
        for (std::size_t i = 0; i < v.size(); ++i)
          v[i] += static_cast<double>(pick[j]) * dual_.column(j)[i];
      }
      return sub(challenge, v);
    }
  }
  return challenge;
}

Transcript GggSession::round(Rng& rng) {
  const int n = dual_.dim();
  Vec x = sample_gaussian(1.0, n, rng);
  auto [xbar, coefs] = reduce_mod(dual_, x);
  Vec answer = prover_answer(xbar, rng);
  Transcript t;
  t.messages.push_back({"verifier", "point", xbar});
  t.messages.push_back({"prover", "point", answer});
  t.accept = norm(sub(answer, x)) <= 1e-9;
  return t;
}

bool GggSession::round_accepts(Rng& rng) {
  const int n = dual_.dim();
  Vec x = sample_gaussian(1.0, n, rng);
  if (kind_ == ProverKind::optimal) {
    // accept iff x lands in the closed Voronoi cell of the dual
    return dual_voronoi_.contains(x);
  }
  auto [xbar, coefs] = reduce_mod(dual_, x);
  Vec answer = prover_answer(xbar, rng);
  return norm(sub(answer, x)) <= 1e-9;
}

Transcript ggg_round(const Basis& basis, ProverKind kind, Rng& rng, double bdd_alpha,
                     double bdd_eps) {
  GggSession session(basis, kind, bdd_alpha, bdd_eps);
  return session.round(rng);
}

ProbEstimate ggg_accept_prob(const Basis& basis, std::uint64_t trials, std::uint64_t seed,
                             int workers) {
  return ggg_strategy_accept_prob(basis, ProverKind::optimal, trials, seed, 0.0, 0.0, workers);
}

ProbEstimate ggg_strategy_accept_prob(const Basis& basis, ProverKind kind, std::uint64_t trials,
                                      std::uint64_t seed, double bdd_alpha, double bdd_eps,
                                      int workers) {
  const int slots = std::max(workers, 1);
  std::vector<GggSession> sessions(slots, GggSession(basis, kind, bdd_alpha, bdd_eps));
  std::uint64_t hits = mc_count(trials, seed, workers, [&](Rng& rng, int w) {
    return sessions[w].round_accepts(rng);
  });
  return binomial_estimate(hits, trials, seed);
}

Transcript ggg_simulate_szk(const Basis& basis, Rng& rng) {
  Basis dual = dual_basis(basis);
  Vec x = sample_gaussian(1.0, dual.dim(), rng);
  auto [xbar, coefs] = reduce_mod(dual, x);
  Transcript t;
  t.messages.push_back({"verifier", "point", xbar});
  t.messages.push_back({"prover", "point", x});
  t.accept = true;
  return t;
}

// ---- SPCom ----

SpcomContext::SpcomContext(const Basis& basis)
    : basis_(basis),
      dual_(dual_basis(basis)),
      dual2_(lattice_scale(dual_, 2.0)),
      r_(0.5 * std::sqrt(basis.dim() / (2.0 * M_PI))) {}

Commitment SpcomContext::commit(int bit, Rng& rng) const {
  const int n = dim();
  Commitment c;
  c.bit = static_cast<std::uint8_t>(bit & 1);
  auto [z, h] = sample_conditioned_pair(c.bit, n, rng);
  c.z = std::move(z);
  c.h = std::move(h);
  c.e = sample_ball(r_, n, rng);
  Vec zf(n);
  for (int i = 0; i < n; ++i) zf[i] = static_cast<double>(c.z[i]);
  c.unreduced = add(dual_.to_point(zf), c.e);
  c.w = reduce_mod(dual2_, c.unreduced).first;
  return c;
}

std::vector<std::uint32_t> SpcomContext::opening_classes(const Commitment& c) const {
  Enumerator en(dual_);
  std::unordered_set<std::uint32_t> classes;
  en.enumerate(c.unreduced, r_, point_budget(),
               [&](const Vec&, const std::vector<long long>& coefs) {
                 std::uint32_t mask = 0;
                 for (std::size_t i = 0; i < coefs.size(); ++i)
                   mask |= static_cast<std::uint32_t>(coefs[i] & 1) << i;
                 classes.insert(mask);
                 return true;
               });
  std::vector<std::uint32_t> out(classes.begin(), classes.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t SpcomContext::raw_candidate_count(const Commitment& c) const {
  Enumerator en(dual_);
  std::uint64_t count = 0;
  en.enumerate(c.unreduced, r_, point_budget(),
               [&](const Vec&, const std::vector<long long>&) {
                 ++count;
                 return true;
               });
  return count;
}

ProbEstimate spcom_binding_estimate(const Basis& basis, std::uint64_t trials, std::uint64_t seed,
                                    int workers) {
  SpcomContext ctx(basis);
  const int slots = std::max(workers, 1);
  std::vector<OverlapTester> testers(slots, OverlapTester(ctx.dual()));
  const double r = ctx.noise_radius();
  std::uint64_t hits = mc_count(trials, seed, workers, [&](Rng& rng, int w) {
    Commitment c = ctx.commit(0, rng);
    return testers[w].near_nonzero(c.e, r);
  });
  return binomial_estimate(hits, trials, seed);
}

double hash_family_discrepancy(int n, const std::vector<std::uint32_t>& classes) {
  const std::uint64_t t = classes.size();
  double total = 0.0;
  const std::uint32_t a_count = 1u << n;
  for (std::uint32_t a = 0; a < a_count; ++a) {
    std::uint64_t ones = 0;
    for (std::uint32_t z : classes) ones += std::popcount(a & z) & 1u;
    // both b values give the same |#0 - #1|
    total += 2.0 * std::fabs(static_cast<double>(t) - 2.0 * static_cast<double>(ones));
  }
  return total / static_cast<double>(2ull << n);  // E over all 2^(n+1) members
}

ProbEstimate spcom_hiding_sd(const Basis& basis, std::uint64_t trials, std::uint64_t seed,
                             int workers) {
  const int n = basis.dim();
  if (n > 16) throw RegimeError("spcom_hiding_sd: exhaustive hash enumeration needs n <= 16");
  SpcomContext ctx(basis);
  const int slots = std::max(workers, 1);
  std::vector<Enumerator> ens(slots, Enumerator(ctx.dual()));
  const double r = ctx.noise_radius();

  double mean = mc_mean(trials, seed, workers, [&](Rng& rng, int w) {
    Commitment c = ctx.commit(0, rng);
    // distinct mod-2 classes of lattice points within r of the lift
    std::vector<std::uint32_t> masks;
    masks.reserve(16);
    ens[w].enumerate(c.unreduced, r, point_budget(),
                     [&](const Vec&, const std::vector<long long>& coefs) {
                       std::uint32_t mask = 0;
                       for (std::size_t i = 0; i < coefs.size(); ++i)
                         mask |= static_cast<std::uint32_t>(coefs[i] & 1) << i;
                       for (std::uint32_t m : masks)
                         if (m == mask) return true;
                       masks.push_back(mask);
                       return true;
                     });
    const std::size_t t = masks.size();
    if (t <= 1) return 1.0;  // single candidate: the hash pins the bit
    // Delta(H|b=0, H|b=1) = E_h |#0 - #1| / t
    double total = 0.0;
    const std::uint32_t a_count = 1u << n;
    const double td = static_cast<double>(t);
    for (std::uint32_t a = 0; a < a_count; ++a) {
      std::uint64_t ones = 0;
      for (std::uint32_t m : masks) ones += std::popcount(a & m) & 1u;
      total += std::fabs(td - 2.0 * static_cast<double>(ones));
    }
    return total / (static_cast<double>(a_count) * td);
  });
  ProbEstimate est = binomial_estimate(0, trials, seed);
  est.mean = mean;
  est.halfwidth = 1.96 * std::sqrt(std::max(mean * (1.0 - mean), 0.0) /
                                   static_cast<double>(std::max<std::uint64_t>(trials, 1)));
  return est;
}

// ---- amplification ----

SchemeParams leaf_params(double p, double q) {
  SchemeParams s;
  s.kind = SchemeParams::Kind::leaf;
  s.p = p;
  s.q = q;
  return s;
}

SchemeParams amplify(const SchemeParams& params, SchemeParams::Kind op, int k) {
  if (k < 1) throw std::invalid_argument("amplify: k must be >= 1");
  if (op == SchemeParams::Kind::leaf) throw std::invalid_argument("amplify: op must not be leaf");
  SchemeParams out;
  out.kind = op;
  out.k = k;
  out.child = std::make_shared<SchemeParams>(params);
  if (op == SchemeParams::Kind::repetition) {
    out.p = 1.0 - std::pow(1.0 - params.p, k);
    out.q = std::pow(params.q, k);
  } else {
    out.p = std::pow(params.p, k);
    out.q = 1.0 - std::pow(1.0 - params.q, k);
  }
  return out;
}

AmplifyPlan amplification_plan(double p, double q, double target) {
  if (!(p >= 0.0 && p < 1.0 && q >= 0.0 && q < 1.0))
    throw std::invalid_argument("amplification_plan: p, q must lie in [0,1)");
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("amplification_plan: target in (0,1)");
  AmplifyPlan plan;
  for (int step = 0; step < 64; ++step) {
    if (p <= target && q <= target) {
      plan.converged = true;
      break;
    }
    // closing move: one big op finishes both sides
    if (q > target && q < 1.0) {
      const int k = static_cast<int>(std::ceil(std::log(target) / std::log(q)));
      if (k >= 1 && k <= 4096) {
        const double p_after = 1.0 - std::pow(1.0 - p, k);
        if (std::pow(q, k) <= target && p_after <= target) {
          plan.steps.push_back({SchemeParams::Kind::repetition, k});
          p = p_after;
          q = std::pow(q, k);
          continue;
        }
      }
    }
    if (p > target && p < 1.0) {
      const int k = static_cast<int>(std::ceil(std::log(target) / std::log(p)));
      if (k >= 1 && k <= 4096) {
        const double q_after = 1.0 - std::pow(1.0 - q, k);
        if (std::pow(p, k) <= target && q_after <= target) {
          plan.steps.push_back({SchemeParams::Kind::sharing, k});
          q = q_after;
          p = std::pow(p, k);
          continue;
        }
      }
    }
    // progress move: square the worse side
    if (p >= q) {
      plan.steps.push_back({SchemeParams::Kind::sharing, 2});
      p = p * p;
      q = 1.0 - (1.0 - q) * (1.0 - q);
    } else {
      plan.steps.push_back({SchemeParams::Kind::repetition, 2});
      q = q * q;
      p = 1.0 - (1.0 - p) * (1.0 - p);
    }
  }
  plan.converged = plan.converged || (p <= target && q <= target);
  plan.p = p;
  plan.q = q;
  return plan;
}

SchemeParams apply_plan(double p, double q, const AmplifyPlan& plan) {
  SchemeParams s = leaf_params(p, q);
  for (const AmplifyStep& st : plan.steps) s = amplify(s, st.op, st.k);
  return s;
}

// ---- composed commitments and the two-message protocol ----

namespace {

void commit_tree(const SpcomContext& ctx, const SchemeParams& params, int bit, Rng& rng,
                 std::vector<Commitment>& leaves) {
  switch (params.kind) {
    case SchemeParams::Kind::leaf:
      leaves.push_back(ctx.commit(bit, rng));
      return;
    case SchemeParams::Kind::repetition:
      for (int i = 0; i < params.k; ++i) commit_tree(ctx, *params.child, bit, rng, leaves);
      return;
    case SchemeParams::Kind::sharing: {
      int acc = 0;
      std::vector<int> shares(params.k);
      for (int i = 0; i + 1 < params.k; ++i) {
        shares[i] = static_cast<int>(rng.next_u64() & 1);
        acc ^= shares[i];
      }
      shares[params.k - 1] = acc ^ (bit & 1);
      for (int i = 0; i < params.k; ++i) commit_tree(ctx, *params.child, shares[i], rng, leaves);
      return;
    }
  }
}

struct Likelihood {
  double l0 = 1.0, l1 = 1.0;
  void normalize() {
    const double s = l0 + l1;
    if (s > 0.0) {
      l0 /= s;
      l1 /= s;
    }
  }
};

// Posterior over the committed bit, walking the same tree shape that
// produced the leaf sequence.
Likelihood guess_tree(const SpcomContext& ctx, const SchemeParams& params,
                      const std::vector<Commitment>& leaves, std::size_t& pos) {
  switch (params.kind) {
    case SchemeParams::Kind::leaf: {
      const Commitment& c = leaves[pos++];
      auto classes = ctx.opening_classes(c);
      std::uint64_t n0 = 0, n1 = 0;
      for (std::uint32_t mask : classes) {
        // h acts on the class pattern: parity(a & z) xor b
        std::uint32_t az = 0;
        for (std::size_t i = 0; i < c.h.a.size(); ++i) az ^= (c.h.a[i] & ((mask >> i) & 1u));
        const int bit = static_cast<int>((az ^ c.h.b) & 1u);
        (bit == 0 ? n0 : n1) += 1;
      }
      Likelihood l;
      l.l0 = static_cast<double>(n0);
      l.l1 = static_cast<double>(n1);
      l.normalize();
      return l;
    }
    case SchemeParams::Kind::repetition: {
      Likelihood acc;
      for (int i = 0; i < params.k; ++i) {
        Likelihood c = guess_tree(ctx, *params.child, leaves, pos);
        acc.l0 *= c.l0;
        acc.l1 *= c.l1;
        acc.normalize();
      }
      return acc;
    }
    case SchemeParams::Kind::sharing: {
      Likelihood acc;
      acc.l0 = 1.0;
      acc.l1 = 0.0;  // XOR identity
      for (int i = 0; i < params.k; ++i) {
        Likelihood c = guess_tree(ctx, *params.child, leaves, pos);
        const double l0 = acc.l0 * c.l0 + acc.l1 * c.l1;
        const double l1 = acc.l0 * c.l1 + acc.l1 * c.l0;
        acc.l0 = l0;
        acc.l1 = l1;
        acc.normalize();
      }
      return acc;
    }
  }
  return {};
}

int run_szk_once(const SpcomContext& ctx, const SchemeParams& params, Rng& rng, Transcript* t) {
  const int bit = static_cast<int>(rng.next_u64() & 1);
  std::vector<Commitment> leaves;
  commit_tree(ctx, params, bit, rng, leaves);
  std::size_t pos = 0;
  Likelihood l = guess_tree(ctx, params, leaves, pos);
  int guess;
  if (l.l0 > l.l1)
    guess = 0;
  else if (l.l1 > l.l0)
    guess = 1;
  else
    guess = static_cast<int>(rng.next_u64() & 1);
  if (t) {
    for (const Commitment& c : leaves) {
      t->messages.push_back({"verifier", "point", c.w});
      Vec hdesc(c.h.a.size() + 1);
      for (std::size_t i = 0; i < c.h.a.size(); ++i) hdesc[i] = c.h.a[i];
      hdesc.back() = c.h.b;
      t->messages.push_back({"verifier", "hash", hdesc});
    }
    t->messages.push_back({"prover", "bit", Vec{static_cast<double>(guess)}});
    t->accept = (guess == bit);
  }
  return guess == bit ? 1 : 0;
}

}  // namespace

Transcript szk_protocol_run(const Basis& basis, const SchemeParams& params, Rng& rng) {
  SpcomContext ctx(basis);
  Transcript t;
  run_szk_once(ctx, params, rng, &t);
  return t;
}

ProbEstimate szk_accept_prob(const Basis& basis, const SchemeParams& params,
                             std::uint64_t trials, std::uint64_t seed, int workers) {
  SpcomContext ctx(basis);
  std::uint64_t hits = mc_count(trials, seed, workers, [&](Rng& rng, int) {
    return run_szk_once(ctx, params, rng, nullptr) == 1;
  });
  return binomial_estimate(hits, trials, seed);
}

ProbEstimate composed_binding_estimate(const Basis& basis, const SchemeParams& params,
                                       std::uint64_t trials, std::uint64_t seed, int workers) {
  SpcomContext ctx(basis);
  const int slots = std::max(workers, 1);
  std::vector<OverlapTester> testers(slots, OverlapTester(ctx.dual()));
  const double r = ctx.noise_radius();
  std::uint64_t hits = mc_count(trials, seed, workers, [&](Rng& rng, int w) {
    std::vector<Commitment> leaves;
    commit_tree(ctx, params, 0, rng, leaves);
    for (const Commitment& c : leaves)
      if (!testers[w].near_nonzero(c.e, r)) return false;
    return true;  // every leaf ambiguous
  });
  return binomial_estimate(hits, trials, seed);
}

// ---- coAM ----

ShellClaims coam_shell_counts(const Basis& basis, double alpha, double eps_y,
                              std::uint64_t budget) {
  if (!(alpha > 0.0)) throw std::invalid_argument("coam_shell_counts: alpha must be positive");
  if (!(eps_y > 0.0 && eps_y < 1.0))
    throw std::invalid_argument("coam_shell_counts: epsY in (0,1)");
  if (budget == 0) budget = point_budget();

  const int n = basis.dim();
  ShellClaims claims;
  claims.alpha = alpha;
  claims.eps_y = eps_y;
  claims.big_r = n * (1.0 + std::log(1.0 / eps_y));
  claims.t_max =
      static_cast<int>(std::ceil(std::log(std::sqrt(claims.big_r)) / std::log(1.0 + alpha)));
  claims.counts.assign(claims.t_max + 1, 0);

  Basis dual = dual_basis(basis);
  Enumerator en(dual);
  const double sqrt_r = std::sqrt(claims.big_r);
  std::uint64_t seen = 0;
  bool truncated = false;
  en.enumerate(Vec(n, 0.0), sqrt_r, std::numeric_limits<std::uint64_t>::max(),
               [&](const Vec& v, const std::vector<long long>& coefs) {
                 bool zero = true;
                 for (long long c : coefs)
                   if (c != 0) {
                     zero = false;
                     break;
                   }
                 if (zero) return true;
                 if (++seen > budget) {
                   truncated = true;
                   return false;
                 }
                 const double len = norm(v);
                 int i = 0;
                 while (i < claims.t_max && len > std::pow(1.0 + alpha, i) * (1.0 + 1e-12)) ++i;
                 claims.counts[i] += 1;
                 return true;
               });
  if (truncated) throw BudgetExceeded("coam_shell_counts: enumeration budget exceeded");
  return claims;
}

double coam_weighted_sum(const ShellClaims& claims) {
  double sum = 0.0;
  for (int i = 0; i <= claims.t_max; ++i) {
    const double radius = std::pow(1.0 + claims.alpha, i);
    sum += static_cast<double>(claims.counts[i]) * std::exp(-M_PI * radius * radius);
  }
  return sum;
}

bool coam_verdict(const ShellClaims& claims) {
  if (!(claims.eps_n > 0.0)) throw std::invalid_argument("coam_verdict: eps_n not set");
  return coam_weighted_sum(claims) >= 0.5 * (claims.eps_y + claims.eps_n);
}

std::vector<std::vector<std::uint8_t>> coam_shell_members(const Basis& basis, double alpha,
                                                          double eps_y, int shell_index,
                                                          std::uint64_t budget) {
  if (budget == 0) budget = point_budget();
  const int n = basis.dim();
  ShellClaims claims = coam_shell_counts(basis, alpha, eps_y, budget);
  if (shell_index < 0 || shell_index > claims.t_max)
    throw std::invalid_argument("coam_shell_members: shell index out of range");

  Basis dual = dual_basis(basis);
  Enumerator en(dual);
  const double hi = std::min(std::pow(1.0 + alpha, shell_index), std::sqrt(claims.big_r));
  const double lo = shell_index == 0 ? 0.0 : std::pow(1.0 + alpha, shell_index - 1);
  std::vector<std::vector<std::uint8_t>> members;
  en.enumerate(Vec(n, 0.0), hi, budget,
               [&](const Vec& v, const std::vector<long long>& coefs) {
                 bool zero = true;
                 for (long long c : coefs)
                   if (c != 0) {
                     zero = false;
                     break;
                   }
                 if (zero) return true;
                 const double len = norm(v);
                 if (shell_index > 0 && len <= lo * (1.0 + 1e-12)) return true;
                 // 16-bit two's complement per coefficient
                 std::vector<std::uint8_t> bits(16 * n);
                 for (int j = 0; j < n; ++j) {
                   const std::uint16_t enc = static_cast<std::uint16_t>(coefs[j]);
                   for (int b = 0; b < 16; ++b) bits[16 * j + b] = (enc >> b) & 1;
                 }
                 members.push_back(std::move(bits));
                 return true;
               });
  return members;
}

namespace {

// m-bit pairwise-independent hash of a bit string: random GF(2) matrix rows
// plus offsets.
struct BitHash {
  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<std::uint8_t> offsets;

  std::uint64_t eval(const std::vector<std::uint8_t>& x) const {
    std::uint64_t out = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::uint8_t acc = offsets[r];
      const auto& row = rows[r];
      for (std::size_t i = 0; i < x.size(); ++i) acc ^= (row[i] & x[i]);
      out |= static_cast<std::uint64_t>(acc & 1) << r;
    }
    return out;
  }
};

BitHash sample_bit_hash(std::size_t bits, int m, Rng& rng) {
  BitHash h;
  h.rows.assign(m, std::vector<std::uint8_t>(bits));
  h.offsets.assign(m, 0);
  for (int r = 0; r < m; ++r) {
    for (std::size_t i = 0; i < bits; ++i)
      h.rows[r][i] = static_cast<std::uint8_t>(rng.next_u64() & 1);
    h.offsets[r] = static_cast<std::uint8_t>(rng.next_u64() & 1);
  }
  return h;
}

}  // namespace

bool gs_lower_bound(const std::vector<std::vector<std::uint8_t>>& members, std::uint64_t claim_k,
                    double gamma, Rng& rng) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gs_lower_bound: gamma in (0,1)");
  if (claim_k == 0) return true;  // empty claim is vacuous
  const int m = std::max(
      0, static_cast<int>(std::floor(std::log2(static_cast<double>(claim_k) / 8.0))));
  if (m == 0) return !members.empty();
  const std::size_t bits = members.front().size();
  const int rounds = static_cast<int>(std::ceil(64.0 / gamma));
  // per-round accept when at least 6 members land on the target; with
  // buckets of expected load in [8,16) for truthful claims and < 4 at 4x
  // inflation, 6 splits the two regimes
  const std::uint64_t hit_threshold = 6;
  int accepted = 0;
  for (int round = 0; round < rounds; ++round) {
    BitHash h = sample_bit_hash(bits, m, rng);
    const std::uint64_t target = rng.next_u64() & ((m >= 64) ? ~0ull : ((1ull << m) - 1));
    std::uint64_t hits = 0;
    for (const auto& member : members)
      if (h.eval(member) == target) ++hits;
    if (hits >= hit_threshold) ++accepted;
  }
  return accepted * 2 > rounds;
}

// ---- BDD decider ----

DecisionReport decide_gapspp_bdd(const Basis& basis, double eps_y, double eps_n, double alpha,
                                 std::uint64_t trials, std::uint64_t seed, int workers) {
  if (!(eps_y > 0.0 && eps_y < eps_n && eps_n < 1.0))
    throw std::invalid_argument("decide_gapspp_bdd: need 0 < epsY < epsN < 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("decide_gapspp_bdd: alpha in (0,1)");

  const int slots = std::max(workers, 1);
  std::vector<GggSession> sessions(slots,
                                   GggSession(basis, ProverKind::bdd, alpha, eps_y));
  std::uint64_t rejects = mc_count(trials, seed, workers, [&](Rng& rng, int w) {
    return !sessions[w].round_accepts(rng);
  });
  ProbEstimate rej = binomial_estimate(rejects, trials, seed);

  DecisionReport rep;
  rep.threshold = 0.5 * (eps_y + eps_n / (1.0 + eps_n));
  rep.sum_u = rej.mean;
  rep.halfwidth = rej.halfwidth;
  rep.point_count = trials;
  if (std::fabs(rej.mean - rep.threshold) <= rej.halfwidth)
    rep.verdict = Verdict::undecided;
  else
    rep.verdict = rej.mean <= rep.threshold ? Verdict::yes : Verdict::no;
  return rep;
}

}  // namespace latsmooth
