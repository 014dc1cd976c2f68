#pragma once

// Desk-scale cryptanalysis of the decomposition problem.
//
// Given pk = a h gamma, find any (a', gamma') in F^a C_n x Gamma with
// a' h gamma' = pk. Such a pair is as good as the real secret: for any peer
// public key pk2 = a2 h gamma2 it yields a' pk2 gamma'^ = a2 pk gamma2^.
//
// Provided here: the challenger side of the three attack games, exhaustive
// search over contiguous H-index slices, and the space-time trade-off split
// F^a C_n = P^t (+) P_t with an offline table over P^t x Gamma.

#include <tdga/algebra.hpp>
#include <tdga/error.hpp>
#include <tdga/kem.hpp>
#include <tdga/kex.hpp>

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tdga {

struct AttackLimits {
  std::uint64_t max_candidates = 10'000'000;
  std::uint64_t max_table_entries = 1'000'000;
};

struct DpdInstance {
  PublicParams pp;
  Element pk;
};

struct SearchResult {
  std::optional<SecretPair> pair;
  std::uint64_t candidates = 0;
};

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  const unsigned __int128 v = static_cast<unsigned __int128>(a) * b;
  if (v > ~std::uint64_t{0}) throw CapacityError(std::string(what) + " exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

inline std::uint64_t power(std::uint64_t base, std::uint32_t e) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < e; ++i) v = checked_mul(v, base, "q^e");
  return v;
}

inline std::vector<Element> all_gammas(const Algebra& alg) {
  const std::uint64_t count = alg.gamma_count();
  std::vector<Element> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(alg.gamma_at(k));
  return out;
}

}  // namespace detail

/// |F^a C_n x Gamma| = q^n q^{ceil((n+1)/2)}.
inline std::uint64_t exhaustive_space(const Algebra& alg) {
  return detail::checked_mul(alg.rotation_count(), alg.gamma_count(), "search space");
}

/// |P^t x Gamma|, the offline table size.
inline std::uint64_t mitm_table_size(const Algebra& alg, std::uint32_t t) {
  return detail::checked_mul(detail::power(alg.field().q(), t), alg.gamma_count(), "table size");
}

/// |P_t x Gamma|, the online scan length.
inline std::uint64_t mitm_online_space(const Algebra& alg, std::uint32_t t) {
  return detail::checked_mul(detail::power(alg.field().q(), alg.n() - t), alg.gamma_count(), "online space");
}

/// Game 1 win condition: the candidate lies in F^a C_n x Gamma and a' h gamma' = pk.
inline bool dpd_verify(const SecretPair& candidate, const DpdInstance& inst) {
  const Algebra& alg = inst.pp.algebra;
  if (candidate.a.size() != alg.dim() || candidate.gamma.size() != alg.dim()) return false;
  if (!alg.in_rotation_part(candidate.a) || !alg.in_gamma(candidate.gamma)) return false;
  return alg.mul(candidate.a, inst.pp.h, candidate.gamma) == inst.pk;
}

/// a' pk2 gamma'^ == shared_key: the recovered pair reproduces a session key.
inline bool recovers_shared_key(const SecretPair& candidate, const PublicParams& pp, const Element& peer_pk,
                                const Element& shared_key) {
  const Algebra& alg = pp.algebra;
  return alg.mul(candidate.a, peer_pk, alg.adjunct(candidate.gamma)) == shared_key;
}

/// Classical form of the quantum search predicate: decode an o-bit string
/// into a pair (same chunking as G1) and test it against the instance.
inline bool search_predicate(std::span<const std::uint8_t> bits, const DpdInstance& inst) {
  return dpd_verify(decode_secret_pair(inst.pp.algebra, bits), inst);
}

/// Tries every (a', gamma') with H(a') in the partition_index-th of
/// partition_count contiguous slices of {0, ..., q^n - 1} and gamma' over all
/// of Gamma, in index order. Returns the first match.
inline SearchResult exhaustive_dpd(const DpdInstance& inst, std::uint64_t partition_index = 0,
                                   std::uint64_t partition_count = 1, const AttackLimits& limits = {}) {
  if (partition_count == 0 || partition_index >= partition_count) throw DomainError("bad partition index");
  const Algebra& alg = inst.pp.algebra;
  const std::uint64_t total = alg.rotation_count();
  const auto begin = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * partition_index / partition_count);
  const auto end =
      static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (partition_index + 1) / partition_count);
  const std::uint64_t gammas = alg.gamma_count();
  if (detail::checked_mul(end - begin, gammas, "slice") > limits.max_candidates)
    throw CapacityError("exhaustive slice of " + std::to_string(end - begin) + " x " + std::to_string(gammas) +
                        " candidates exceeds bound " + std::to_string(limits.max_candidates));

  const std::vector<Element> gamma_list = detail::all_gammas(alg);
  SearchResult out;
  for (std::uint64_t k = begin; k < end; ++k) {
    Element a = alg.index_h_inv(k);
    const Element ah = alg.mul(a, inst.pp.h);
    for (const Element& g : gamma_list) {
      ++out.candidates;
      if (alg.mul(ah, g) == inst.pk) {
        out.pair = SecretPair{std::move(a), g};
        return out;
      }
    }
  }
  return out;
}

/// Runs every partition as its own task. The reported pair comes from the
/// lowest-numbered partition that found one; candidates are summed.
inline SearchResult exhaustive_dpd_parallel(const DpdInstance& inst, std::uint64_t partition_count,
                                            const AttackLimits& limits = {}) {
  if (partition_count == 0) throw DomainError("need at least one partition");
  if (exhaustive_space(inst.pp.algebra) > limits.max_candidates)
    throw CapacityError("exhaustive search space exceeds bound " + std::to_string(limits.max_candidates));
  std::vector<std::future<SearchResult>> tasks;
  tasks.reserve(partition_count);
  for (std::uint64_t i = 0; i < partition_count; ++i)
    tasks.push_back(std::async(std::launch::async, [&inst, i, partition_count, limits] {
      return exhaustive_dpd(inst, i, partition_count, limits);
    }));
  SearchResult out;
  for (auto& t : tasks) {
    SearchResult r = t.get();
    out.candidates += r.candidates;
    if (!out.pair && r.pair) out.pair = std::move(r.pair);
  }
  return out;
}

struct MitmEntry {
  Element a1;
  Element gamma;
};

struct MitmTable {
  std::uint32_t t = 0;
  std::map<IndexH, std::vector<MitmEntry>> buckets;
  std::uint64_t entries = 0;
};

/// Stores every (a1, gamma) in P^t x Gamma under H(a1 h gamma), where P^t is
/// the rotation elements supported on x^0, ..., x^{t-1}.
inline MitmTable mitm_offline(const PublicParams& pp, std::uint32_t t, const AttackLimits& limits = {}) {
  const Algebra& alg = pp.algebra;
  if (t > alg.n()) throw DomainError("t must lie in [0, n]");
  if (mitm_table_size(alg, t) > limits.max_table_entries)
    throw CapacityError("offline table of " + std::to_string(mitm_table_size(alg, t)) + " entries exceeds bound " +
                        std::to_string(limits.max_table_entries));
  const std::vector<Element> gamma_list = detail::all_gammas(alg);
  const std::uint64_t prefix_count = detail::power(alg.field().q(), t);
  MitmTable table;
  table.t = t;
  for (std::uint64_t k = 0; k < prefix_count; ++k) {
    const Element a1 = alg.index_h_inv(k);
    const Element a1h = alg.mul(a1, pp.h);
    for (const Element& g : gamma_list) {
      table.buckets[alg.index_h(alg.mul(a1h, g))].push_back(MitmEntry{a1, g});
      ++table.entries;
    }
  }
  return table;
}

/// Scans a2 in P_t (support x^t, ..., x^{n-1}) and gamma in Gamma, looking up
/// H(pk - a2 h gamma). A bucket entry with the same gamma gives the answer
/// (a1 + a2, gamma); entries whose gamma differs are skipped.
inline SearchResult mitm_online(const MitmTable& table, const DpdInstance& inst, std::uint32_t t,
                                const AttackLimits& limits = {}) {
  const Algebra& alg = inst.pp.algebra;
  if (t > alg.n()) throw DomainError("t must lie in [0, n]");
  if (mitm_online_space(alg, t) > limits.max_candidates)
    throw CapacityError("online scan exceeds bound " + std::to_string(limits.max_candidates));
  const std::vector<Element> gamma_list = detail::all_gammas(alg);
  const std::uint64_t q = alg.field().q();
  const std::uint64_t suffix_count = detail::power(q, alg.n() - t);
  SearchResult out;
  for (std::uint64_t k = 0; k < suffix_count; ++k) {
    Element a2 = alg.zero();
    std::uint64_t v = k;
    for (std::uint32_t i = t; i < alg.n(); ++i, v /= q) a2[i] = Fe{v % q};
    const Element a2h = alg.mul(a2, inst.pp.h);
    for (const Element& g : gamma_list) {
      ++out.candidates;
      const auto it = table.buckets.find(alg.index_h(alg.sub(inst.pk, alg.mul(a2h, g))));
      if (it == table.buckets.end()) continue;
      for (const MitmEntry& e : it->second) {
        if (e.gamma != g) continue;
        out.pair = SecretPair{alg.add(e.a1, a2), g};
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Attack games
// ---------------------------------------------------------------------------

enum class Game { dpd, cdp, ddp };

struct DpdChallenge {
  SecretPair secret;
  Element pk;
};

struct CdpChallenge {
  SecretPair s1, s2;
  Element pk1, pk2;
  Element key;  // a2 pk1 gamma2^
};

struct DdpChallenge {
  SecretPair s1, s2, s3;
  Element pk1, pk2;
  Element k0;  // a2 pk1 gamma2^
  Element k1;  // a3 h gamma3
  int b = 0;

  const Element& challenge_key() const { return b == 0 ? k0 : k1; }
};

template <RandomSource R>
DpdChallenge dpd_challenge(const PublicParams& pp, R& rng) {
  DpdChallenge c{pp.algebra.sample_secret(rng), {}};
  c.pk = derive_public(c.secret, pp);
  return c;
}

template <RandomSource R>
CdpChallenge cdp_challenge(const PublicParams& pp, R& rng) {
  CdpChallenge c;
  c.s1 = pp.algebra.sample_secret(rng);
  c.s2 = pp.algebra.sample_secret(rng);
  c.pk1 = derive_public(c.s1, pp);
  c.pk2 = derive_public(c.s2, pp);
  c.key = derive_shared(c.s2, c.pk1, pp);
  return c;
}

template <RandomSource R>
DdpChallenge ddp_challenge(const PublicParams& pp, int b, R& rng) {
  DdpChallenge c;
  c.s1 = pp.algebra.sample_secret(rng);
  c.s2 = pp.algebra.sample_secret(rng);
  c.s3 = pp.algebra.sample_secret(rng);
  c.pk1 = derive_public(c.s1, pp);
  c.pk2 = derive_public(c.s2, pp);
  c.k0 = derive_shared(c.s2, c.pk1, pp);
  c.k1 = derive_public(c.s3, pp);
  c.b = b;
  return c;
}

struct CdpView {
  const PublicParams& pp;
  const Element& pk1;
  const Element& pk2;
  const SecretPair* leaked_s2 = nullptr;  // only set for wiring checks
};

using DpdAdversary = std::function<std::optional<SecretPair>(const PublicParams&, const Element& pk)>;
using CdpAdversary = std::function<Element(const CdpView&)>;
using DdpAdversary = std::function<int(const PublicParams&, const Element& pk1, const Element& pk2, const Element& k)>;

struct GameOutcome {
  Game game = Game::dpd;
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  /// DDP only: how often the adversary answered 1 in each experiment.
  std::uint64_t experiment_trials[2] = {0, 0};
  std::uint64_t said_one[2] = {0, 0};

  double success_rate() const { return trials ? static_cast<double>(wins) / static_cast<double>(trials) : 0.0; }

  /// |Pr[W_0] - Pr[W_1]| for DDP; the success rate for DPD and CDP.
  double advantage() const {
    if (game != Game::ddp) return success_rate();
    if (!experiment_trials[0] || !experiment_trials[1]) return 0.0;
    const double w0 = static_cast<double>(said_one[0]) / static_cast<double>(experiment_trials[0]);
    const double w1 = static_cast<double>(said_one[1]) / static_cast<double>(experiment_trials[1]);
    return w0 > w1 ? w0 - w1 : w1 - w0;
  }
};

template <RandomSource R>
GameOutcome run_dpd_game(const DpdAdversary& adversary, const PublicParams& pp, R& rng, std::uint64_t trials) {
  GameOutcome out{Game::dpd};
  for (std::uint64_t i = 0; i < trials; ++i) {
    const DpdChallenge c = dpd_challenge(pp, rng);
    ++out.trials;
    const auto guess = adversary(pp, c.pk);
    if (guess && dpd_verify(*guess, DpdInstance{pp, c.pk})) ++out.wins;
  }
  return out;
}

template <RandomSource R>
GameOutcome run_cdp_game(const CdpAdversary& adversary, const PublicParams& pp, R& rng, std::uint64_t trials,
                         bool leak_secret = false) {
  GameOutcome out{Game::cdp};
  for (std::uint64_t i = 0; i < trials; ++i) {
    const CdpChallenge c = cdp_challenge(pp, rng);
    ++out.trials;
    const CdpView view{pp, c.pk1, c.pk2, leak_secret ? &c.s2 : nullptr};
    if (adversary(view) == c.key) ++out.wins;
  }
  return out;
}

template <RandomSource R>
GameOutcome run_ddp_game(const DdpAdversary& adversary, const PublicParams& pp, R& rng, std::uint64_t trials) {
  GameOutcome out{Game::ddp};
  std::bernoulli_distribution coin(0.5);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const int b = coin(rng) ? 1 : 0;
    const DdpChallenge c = ddp_challenge(pp, b, rng);
    ++out.trials;
    const int guess = adversary(pp, c.pk1, c.pk2, c.challenge_key());
    ++out.experiment_trials[b];
    if (guess == 1) ++out.said_one[b];
    if (guess == b) ++out.wins;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stock adversaries
// ---------------------------------------------------------------------------

/// Uniform guess from F^a C_n x Gamma (zero components included).
template <RandomSource R>
DpdAdversary random_guess_adversary(R& rng) {
  return [&rng](const PublicParams& pp, const Element&) -> std::optional<SecretPair> {
    return SecretPair{pp.algebra.sample_rotation(rng), pp.algebra.sample_gamma(rng)};
  };
}

inline DpdAdversary exhaustive_adversary(AttackLimits limits = {}) {
  return [limits](const PublicParams& pp, const Element& pk) {
    return exhaustive_dpd(DpdInstance{pp, pk}, 0, 1, limits).pair;
  };
}

/// Builds the offline table on first use and reuses it for every instance.
inline DpdAdversary mitm_adversary(std::uint32_t t, AttackLimits limits = {}) {
  auto table = std::make_shared<std::optional<MitmTable>>();
  return [table, t, limits](const PublicParams& pp, const Element& pk) {
    if (!*table) *table = mitm_offline(pp, t, limits);
    return mitm_online(**table, DpdInstance{pp, pk}, t, limits).pair;
  };
}

/// Solve pk1, then compute a' pk2 gamma'^.
inline CdpAdversary cdp_from_dpd(DpdAdversary solver) {
  return [solver = std::move(solver)](const CdpView& v) -> Element {
    const auto pair = solver(v.pp, v.pk1);
    if (!pair) return v.pp.algebra.zero();
    return v.pp.algebra.mul(pair->a, v.pk2, v.pp.algebra.adjunct(pair->gamma));
  };
}

/// Uses the leaked responder secret to compute the key directly.
inline CdpAdversary leaked_secret_adversary() {
  return [](const CdpView& v) -> Element {
    if (!v.leaked_s2) return v.pp.algebra.zero();
    return derive_shared(*v.leaked_s2, v.pk1, v.pp);
  };
}

template <RandomSource R>
DdpAdversary coin_flip_adversary(R& rng) {
  return [&rng](const PublicParams&, const Element&, const Element&, const Element&) {
    return std::bernoulli_distribution(0.5)(rng) ? 1 : 0;
  };
}

}  // namespace tdga
