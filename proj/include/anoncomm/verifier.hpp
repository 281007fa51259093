#ifndef ANONCOMM_VERIFIER_HPP
#define ANONCOMM_VERIFIER_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "anoncomm/dist.hpp"
#include "anoncomm/scheme.hpp"

namespace anoncomm {

enum class Verdict { pass, fail, skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "skipped";
  }
}

/// Counterexample record attached to every failing check.
struct Witness {
  std::string description;
  std::map<std::string, std::string> details;
};

struct CheckReport {
  std::string check_name;
  SchemeParams params;
  Verdict verdict = Verdict::pass;
  std::optional<Witness> witness;
  std::uint64_t states_enumerated = 0;
  double wall_seconds = 0.0;
  std::map<std::string, std::string> info;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

inline std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

inline std::vector<SymbolVector> messages_from_index(std::uint64_t idx,
                                                     const SchemeParams& pr) {
  std::vector<SymbolVector> msgs;
  msgs.reserve(pr.K);
  std::vector<std::vector<std::uint32_t>> raw(pr.K,
                                              std::vector<std::uint32_t>(pr.L));
  for (std::uint32_t i = pr.K; i-- > 0;)
    for (std::uint32_t j = pr.L; j-- > 0;) {
      raw[i][j] = static_cast<std::uint32_t>(idx % pr.p);
      idx /= pr.p;
    }
  for (auto& r : raw) msgs.emplace_back(std::move(r), pr.p);
  return msgs;
}

inline std::vector<SymbolVector> round_transcript(
    const Scheme& scheme, std::uint32_t theta,
    const std::vector<SymbolVector>& shares, const std::vector<SymbolVector>& msgs) {
  const SchemeParams pr = scheme.params();
  std::vector<SymbolVector> y;
  y.reserve(pr.K);
  for (std::uint32_t i = 1; i <= pr.K; ++i)
    y.push_back(scheme.signal(i, i == theta, msgs[i - 1], shares[i - 1]));
  return y;
}

inline void append_flat(Outcome& out, const SymbolVector& v) {
  out.insert(out.end(), v.elems().begin(), v.elems().end());
}

inline std::string outcome_str(const Outcome& o) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < o.size(); ++i) os << (i ? "," : "") << o[i];
  os << ")";
  return os.str();
}

/// Exact transcript distribution for one theta, over uniform seeds and
/// uniform messages.
inline DistTable transcript_table(const Scheme& scheme, std::uint32_t theta,
                                  std::uint64_t cap, std::uint64_t* states) {
  const SchemeParams pr = scheme.params();
  const std::uint64_t msg_states = pow_u64(pr.p, pr.K * pr.L);
  const std::uint64_t n = scheme.seed_states() * msg_states;
  if (n > cap) throw CapExceeded(n, cap);
  DistTable table(static_cast<std::size_t>(pr.K) * pr.N);
  for (std::uint64_t s = 0; s < scheme.seed_states(); ++s) {
    const auto shares = scheme.shares(s);
    for (std::uint64_t m = 0; m < msg_states; ++m) {
      const auto msgs = messages_from_index(m, pr);
      Outcome flat;
      flat.reserve(table.arity());
      for (const auto& sig : round_transcript(scheme, theta, shares, msgs))
        append_flat(flat, sig);
      table.add(flat);
    }
  }
  if (states) *states += n;
  return table;
}

/// FNV-1a over the full decoder table (scalar case); identifies g in reports.
inline std::string decoder_hash(const Scheme& scheme) {
  const SchemeParams pr = scheme.params();
  if (pr.N != 1 || pr.L != 1) return "n/a";
  std::uint64_t h = 1469598103934665603ULL;
  const std::uint64_t cells = pow_u64(pr.p, pr.K);
  for (std::uint64_t c = 0; c < cells; ++c) {
    std::uint64_t idx = c;
    std::vector<SymbolVector> y;
    std::vector<std::uint32_t> digits(pr.K);
    for (std::uint32_t i = pr.K; i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(idx % pr.p);
      idx /= pr.p;
    }
    for (auto d : digits) y.push_back(SymbolVector({d}, pr.p));
    h = (h ^ scheme.decode_transcript(y)[0]) * 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace detail

/// decode(Y) == W_theta for every seed, message tuple and theta.
inline CheckReport check_correctness(const Scheme& scheme,
                                     std::uint64_t cap = kDefaultStateCap) {
  detail::Stopwatch sw;
  CheckReport rep;
  rep.check_name = "correctness";
  rep.params = scheme.params();
  const SchemeParams pr = scheme.params();
  const std::uint64_t msg_states = detail::pow_u64(pr.p, pr.K * pr.L);
  const std::uint64_t n = scheme.seed_states() * msg_states * pr.K;
  if (n > cap) throw CapExceeded(n, cap);
  for (std::uint64_t s = 0; s < scheme.seed_states() && rep.verdict == Verdict::pass;
       ++s) {
    const auto shares = scheme.shares(s);
    for (std::uint64_t m = 0; m < msg_states; ++m) {
      const auto msgs = detail::messages_from_index(m, pr);
      for (std::uint32_t theta = 1; theta <= pr.K; ++theta) {
        ++rep.states_enumerated;
        const auto y = detail::round_transcript(scheme, theta, shares, msgs);
        const SymbolVector decoded = scheme.decode_transcript(y);
        if (decoded != msgs[theta - 1]) {
          Witness w;
          w.description = "decoded message differs from W_theta";
          w.details["theta"] = std::to_string(theta);
          w.details["seed_index"] = std::to_string(s);
          w.details["message_index"] = std::to_string(m);
          w.details["expected"] = detail::outcome_str(msgs[theta - 1].elems());
          w.details["decoded"] = detail::outcome_str(decoded.elems());
          rep.verdict = Verdict::fail;
          rep.witness = std::move(w);
          break;
        }
      }
      if (rep.verdict == Verdict::fail) break;
    }
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Transcript distributions are identical for every theta.
inline CheckReport check_anonymity(const Scheme& scheme,
                                   std::uint64_t cap = kDefaultStateCap) {
  detail::Stopwatch sw;
  CheckReport rep;
  rep.check_name = "anonymity";
  rep.params = scheme.params();
  rep.info["decoder_hash"] = detail::decoder_hash(scheme);
  const DistTable ref = detail::transcript_table(scheme, 1, cap, &rep.states_enumerated);
  for (std::uint32_t theta = 2; theta <= rep.params.K; ++theta) {
    const DistTable t =
        detail::transcript_table(scheme, theta, cap, &rep.states_enumerated);
    if (!same_distribution(ref, t)) {
      Witness w;
      w.description = "transcript distribution depends on theta";
      w.details["theta_a"] = "1";
      w.details["theta_b"] = std::to_string(theta);
      for (const auto& [o, c] : t.counts()) {
        const auto it = ref.counts().find(o);
        const std::uint64_t cref = it == ref.counts().end() ? 0 : it->second;
        if (cref * t.total() != c * ref.total()) {
          w.details["transcript"] = detail::outcome_str(o);
          w.details["count_theta_1"] = std::to_string(cref);
          w.details["count_theta_b"] = std::to_string(c);
          break;
        }
      }
      rep.verdict = Verdict::fail;
      rep.witness = std::move(w);
      break;
    }
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// I(Transcript ; non-desired messages) is exactly zero for every theta,
/// decided by the integer factorization test.
inline CheckReport check_security(const Scheme& scheme,
                                  std::uint64_t cap = kDefaultStateCap) {
  detail::Stopwatch sw;
  CheckReport rep;
  rep.check_name = "security";
  rep.params = scheme.params();
  const SchemeParams pr = scheme.params();
  const std::uint64_t msg_states = detail::pow_u64(pr.p, pr.K * pr.L);
  const std::uint64_t n = scheme.seed_states() * msg_states * pr.K;
  if (n > cap) throw CapExceeded(n, cap);
  for (std::uint32_t theta = 1; theta <= pr.K; ++theta) {
    const std::size_t transcript_arity = static_cast<std::size_t>(pr.K) * pr.N;
    const std::size_t other_arity = static_cast<std::size_t>(pr.K - 1) * pr.L;
    DistTable joint(transcript_arity + other_arity);
    for (std::uint64_t s = 0; s < scheme.seed_states(); ++s) {
      const auto shares = scheme.shares(s);
      for (std::uint64_t m = 0; m < msg_states; ++m) {
        ++rep.states_enumerated;
        const auto msgs = detail::messages_from_index(m, pr);
        Outcome flat;
        flat.reserve(joint.arity());
        for (const auto& sig : detail::round_transcript(scheme, theta, shares, msgs))
          detail::append_flat(flat, sig);
        for (std::uint32_t i = 1; i <= pr.K; ++i)
          if (i != theta) detail::append_flat(flat, msgs[i - 1]);
        joint.add(flat);
      }
    }
    std::vector<std::size_t> ga(transcript_arity), gb(other_arity);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] = i;
    for (std::size_t i = 0; i < gb.size(); ++i) gb[i] = transcript_arity + i;
    const EntropyValue mi = mutual_information(joint, ga, gb, pr.p);
    if (!(mi.exact && mi.exact_value == Rational(0, 1))) {
      Witness w;
      w.description = "transcript carries information about non-desired messages";
      w.details["theta"] = std::to_string(theta);
      w.details["mutual_information_pary"] = std::to_string((double)mi.value);
      rep.verdict = Verdict::fail;
      rep.witness = std::move(w);
      break;
    }
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Colluding non-desired transmitters (joined with the receiver) see the same
/// joint distribution of (transcript, their shares, messages and flags) no
/// matter which outside transmitter is desired.
inline CheckReport check_collusion(const Scheme& scheme,
                                   const std::set<std::uint32_t>& colluders,
                                   std::uint64_t cap = kDefaultStateCap) {
  detail::Stopwatch sw;
  CheckReport rep;
  rep.check_name = "collusion";
  rep.params = scheme.params();
  const SchemeParams pr = scheme.params();
  {
    std::string cs;
    for (auto c : colluders) cs += (cs.empty() ? "" : ",") + std::to_string(c);
    rep.info["colluders"] = "{" + cs + "}";
  }
  if (colluders.size() > pr.K - 2)
    throw Error("colluding set must have at most K-2 transmitters");
  for (auto c : colluders)
    if (c < 1 || c > pr.K) throw Error("colluder index out of range");

  const std::uint64_t msg_states = detail::pow_u64(pr.p, pr.K * pr.L);
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t t = 1; t <= pr.K; ++t)
    if (!colluders.count(t)) candidates.push_back(t);
  const std::uint64_t n = scheme.seed_states() * msg_states * candidates.size();
  if (n > cap) throw CapExceeded(n, cap);

  auto view_table = [&](std::uint32_t theta) {
    const std::size_t arity = static_cast<std::size_t>(pr.K) * pr.N +
                              colluders.size() * (2 * pr.L + 1);
    DistTable table(arity);
    for (std::uint64_t s = 0; s < scheme.seed_states(); ++s) {
      const auto shares = scheme.shares(s);
      for (std::uint64_t m = 0; m < msg_states; ++m) {
        const auto msgs = detail::messages_from_index(m, pr);
        Outcome flat;
        flat.reserve(arity);
        for (const auto& sig : detail::round_transcript(scheme, theta, shares, msgs))
          detail::append_flat(flat, sig);
        for (auto c : colluders) {
          detail::append_flat(flat, shares[c - 1]);
          detail::append_flat(flat, msgs[c - 1]);
          flat.push_back(c == theta ? 1 : 0);  // own desire flag; never set here
        }
        table.add(flat);
      }
    }
    return table;
  };

  const DistTable ref = view_table(candidates[0]);
  rep.states_enumerated += scheme.seed_states() * msg_states;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const DistTable t = view_table(candidates[i]);
    rep.states_enumerated += scheme.seed_states() * msg_states;
    if (!same_distribution(ref, t)) {
      Witness w;
      w.description = "colluder view distinguishes candidate desired indices";
      w.details["theta_a"] = std::to_string(candidates[0]);
      w.details["theta_b"] = std::to_string(candidates[i]);
      rep.verdict = Verdict::fail;
      rep.witness = std::move(w);
      break;
    }
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Every transcript distribution is exactly uniform over p^(K*N) tuples.
inline CheckReport check_transcript_uniform(const Scheme& scheme,
                                            std::uint64_t cap = kDefaultStateCap) {
  detail::Stopwatch sw;
  CheckReport rep;
  rep.check_name = "transcript-uniform";
  rep.params = scheme.params();
  const SchemeParams pr = scheme.params();
  if (pr.N != pr.L) throw Error("transcript-uniform expects a rate-1/K scheme (N = L)");
  const std::uint64_t cells = detail::pow_u64(pr.p, pr.K * pr.N);
  for (std::uint32_t theta = 1; theta <= pr.K && rep.verdict == Verdict::pass;
       ++theta) {
    const DistTable t =
        detail::transcript_table(scheme, theta, cap, &rep.states_enumerated);
    bool uniform = t.support_size() == cells;
    if (uniform) {
      const std::uint64_t c0 = t.counts().begin()->second;
      for (const auto& [o, c] : t.counts())
        if (c != c0) {
          uniform = false;
          break;
        }
    }
    if (!uniform) {
      Witness w;
      w.description = "transcript distribution not uniform over p^(K*N) tuples";
      w.details["theta"] = std::to_string(theta);
      w.details["support"] = std::to_string(t.support_size());
      w.details["expected_support"] = std::to_string(cells);
      rep.verdict = Verdict::fail;
      rep.witness = std::move(w);
    }
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// A non-desired signal is a function of the share alone: varying the
/// transmitter's own message must not move it.
inline CheckReport check_share_determinism(const Scheme& scheme,
                                           std::uint64_t cap = kDefaultStateCap) {
  detail::Stopwatch sw;
  CheckReport rep;
  rep.check_name = "share-determinism";
  rep.params = scheme.params();
  const SchemeParams pr = scheme.params();
  const std::uint64_t per_msg = detail::pow_u64(pr.p, pr.L);
  const std::uint64_t n = scheme.seed_states() * pr.K * per_msg;
  if (n > cap) throw CapExceeded(n, cap);
  for (std::uint64_t s = 0; s < scheme.seed_states() && rep.verdict == Verdict::pass;
       ++s) {
    const auto shares = scheme.shares(s);
    for (std::uint32_t i = 1; i <= pr.K; ++i) {
      std::optional<SymbolVector> seen;
      for (std::uint64_t m = 0; m < per_msg; ++m) {
        ++rep.states_enumerated;
        std::vector<std::uint32_t> raw(pr.L);
        std::uint64_t idx = m;
        for (std::uint32_t j = pr.L; j-- > 0;) {
          raw[j] = static_cast<std::uint32_t>(idx % pr.p);
          idx /= pr.p;
        }
        const SymbolVector sig =
            scheme.signal(i, false, SymbolVector(std::move(raw), pr.p), shares[i - 1]);
        if (!seen) {
          seen = sig;
        } else if (*seen != sig) {
          Witness w;
          w.description = "non-desired signal varies with the transmitter's message";
          w.details["transmitter"] = std::to_string(i);
          w.details["seed_index"] = std::to_string(s);
          rep.verdict = Verdict::fail;
          rep.witness = std::move(w);
          break;
        }
      }
      if (rep.verdict == Verdict::fail) break;
    }
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Scalar decoders of capacity-achieving schemes must change output whenever
/// any single transcript coordinate changes. Skipped for N > 1 or L > 1.
inline CheckReport check_decoder_latin_structure(const Scheme& scheme,
                                                 std::uint64_t cap = kDefaultStateCap) {
  detail::Stopwatch sw;
  CheckReport rep;
  rep.check_name = "decoder-latin-structure";
  rep.params = scheme.params();
  const SchemeParams pr = scheme.params();
  if (pr.N != 1 || pr.L != 1) {
    rep.verdict = Verdict::skipped;
    rep.info["reason"] = "decoder table check applies only to N = L = 1";
    rep.wall_seconds = sw.seconds();
    return rep;
  }
  const std::uint64_t cells = detail::pow_u64(pr.p, pr.K);
  if (cells * pr.K * pr.p > cap) throw CapExceeded(cells * pr.K * pr.p, cap);
  std::vector<std::uint32_t> table(cells);
  for (std::uint64_t c = 0; c < cells; ++c) {
    std::uint64_t idx = c;
    std::vector<SymbolVector> y;
    std::vector<std::uint32_t> digits(pr.K);
    for (std::uint32_t i = pr.K; i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(idx % pr.p);
      idx /= pr.p;
    }
    for (auto d : digits) y.push_back(SymbolVector({d}, pr.p));
    table[c] = scheme.decode_transcript(y)[0];
  }
  std::uint64_t stride = 1;
  for (std::uint32_t coord = pr.K; coord-- > 0; stride *= pr.p) {
    for (std::uint64_t c = 0; c < cells; ++c) {
      const std::uint32_t digit =
          static_cast<std::uint32_t>((c / stride) % pr.p);
      for (std::uint32_t alt = 0; alt < pr.p; ++alt) {
        if (alt == digit) continue;
        ++rep.states_enumerated;
        const std::uint64_t c2 = c + (static_cast<std::uint64_t>(alt) - digit) * stride;
        if (table[c] == table[c2]) {
          Witness w;
          w.description = "single-coordinate change left decoder output unchanged";
          w.details["cell_a"] = std::to_string(c);
          w.details["cell_b"] = std::to_string(c2);
          w.details["output"] = std::to_string(table[c]);
          rep.verdict = Verdict::fail;
          rep.witness = std::move(w);
          rep.wall_seconds = sw.seconds();
          return rep;
        }
      }
    }
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// All checks at one parameter point. Collusion runs over every admissible
/// colluder set.
inline std::vector<CheckReport> run_all_checks(const Scheme& scheme,
                                               std::uint64_t cap = kDefaultStateCap) {
  std::vector<CheckReport> out;
  out.push_back(check_correctness(scheme, cap));
  out.push_back(check_anonymity(scheme, cap));
  out.push_back(check_security(scheme, cap));
  const std::uint32_t K = scheme.params().K;
  // every subset of [1..K] with size <= K-2
  for (std::uint32_t mask = 0; mask < (1u << K); ++mask) {
    std::set<std::uint32_t> colluders;
    for (std::uint32_t i = 0; i < K; ++i)
      if (mask & (1u << i)) colluders.insert(i + 1);
    if (colluders.size() > K - 2) continue;
    out.push_back(check_collusion(scheme, colluders, cap));
  }
  out.push_back(check_transcript_uniform(scheme, cap));
  out.push_back(check_share_determinism(scheme, cap));
  out.push_back(check_decoder_latin_structure(scheme, cap));
  return out;
}

}  // namespace anoncomm

#endif  // ANONCOMM_VERIFIER_HPP
