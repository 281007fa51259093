#ifndef ANONCOMM_PROTOCOL_HPP
#define ANONCOMM_PROTOCOL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "anoncomm/common.hpp"
#include "anoncomm/dist.hpp"
#include "anoncomm/field.hpp"

namespace anoncomm {

/// K transmitters over F_p, L message symbols, N channel uses per transmitter.
/// The built-in scheme always has N = L.
struct SchemeParams {
  std::uint32_t K = 3;
  std::uint32_t p = 2;
  std::uint32_t L = 1;
  std::uint32_t N = 1;

  void validate() const {
    if (K < 2) throw Error("K must be >= 2");
    require_supported_prime(p);
    if (L < 1) throw Error("L must be >= 1");
    if (N < 1) throw Error("N must be >= 1");
  }

  std::uint32_t seed_length() const { return (K - 1) * L; }

  std::uint64_t seed_states() const {
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < seed_length(); ++i) n *= p;
    return n;
  }
};

/// The dealer's raw randomness: (K-1)*L i.i.d. uniform symbols. Layout is
/// transmitter-major: symbols [ (i-1)*L, i*L ) feed transmitter i's share.
struct Seed {
  SymbolVector a;
};

struct Share {
  std::uint32_t owner = 0;  // 1-based transmitter index
  SymbolVector z;
};

struct Message {
  SymbolVector w;
};

/// A transmitter's entire knowledge of theta: desired or not.
struct DesireFlag {
  bool is_desired = false;
};

struct Transcript {
  std::vector<SymbolVector> signals;  // index i-1 holds transmitter i's signal
};

/// Share assignment: Z_i is a fresh seed symbol per message slot for
/// i < K, and Z_K is the slotwise sum of all the others. The K shares sum to
/// zero in every slot.
inline std::vector<Share> deal(const SchemeParams& params, const Seed& seed) {
  params.validate();
  if (seed.a.size() != params.seed_length())
    throw Error("seed length must be (K-1)*L = " + std::to_string(params.seed_length()));
  if (seed.a.modulus() != params.p) throw Error("seed modulus mismatch");

  std::vector<Share> shares;
  shares.reserve(params.K);
  SymbolVector sum = SymbolVector::zero(params.L, params.p);
  for (std::uint32_t i = 1; i < params.K; ++i) {
    SymbolVector z = seed.a.slice((i - 1) * params.L, params.L);
    sum = vec_add(sum, z);
    shares.push_back(Share{i, std::move(z)});
  }
  // Z_K is the negation of the partial sum, so all K shares sum to zero.
  std::vector<std::uint32_t> neg(params.L);
  for (std::uint32_t j = 0; j < params.L; ++j) neg[j] = (params.p - sum[j]) % params.p;
  shares.push_back(Share{params.K, SymbolVector(std::move(neg), params.p)});
  return shares;
}

/// X_i = Z_i, plus W_i when transmitter i is the desired one.
inline SymbolVector encode(std::uint32_t i, DesireFlag flag, const Message& w,
                           const Share& z) {
  if (z.owner != i) throw Error("share owner mismatch");
  if (!flag.is_desired) return z.z;
  return vec_add(z.z, w.w);  // length/modulus mismatches surface here
}

/// Fixed decoder: slotwise sum of all K signals. Takes no theta input.
inline Message decode(const Transcript& y) {
  if (y.signals.empty()) throw Error("empty transcript");
  SymbolVector acc = y.signals[0];
  for (std::size_t i = 1; i < y.signals.size(); ++i) acc = vec_add(acc, y.signals[i]);
  return Message{std::move(acc)};
}

inline std::pair<Transcript, Message> run_round(const SchemeParams& params,
                                                std::uint32_t theta,
                                                const std::vector<Message>& messages,
                                                const Seed& seed) {
  params.validate();
  if (theta < 1 || theta > params.K) throw Error("theta out of range");
  if (messages.size() != params.K) throw Error("need exactly K messages");
  const auto shares = deal(params, seed);
  Transcript y;
  y.signals.reserve(params.K);
  for (std::uint32_t i = 1; i <= params.K; ++i)
    y.signals.push_back(
        encode(i, DesireFlag{i == theta}, messages[i - 1], shares[i - 1]));
  Message decoded = decode(y);
  return {std::move(y), std::move(decoded)};
}

struct SchemeMetrics {
  Rational rate;  // L / (K*N)
  Rational rho;   // H(Z_1) / L, p-ary units
  Rational eta;   // H(Z_1..Z_K) / L, p-ary units
};

/// Rate from the parameters; rho and eta from exact entropies of the dealt
/// share distribution over all seeds (never hardcoded).
inline SchemeMetrics metrics(const SchemeParams& params,
                             std::uint64_t cap = kDefaultStateCap) {
  params.validate();
  SpaceSpec spec;
  spec.radices.assign(params.seed_length(), params.p);
  spec.outcome_arity = params.K * params.L;
  spec.eval = [&params](const std::vector<std::uint32_t>& in) {
    Seed seed{SymbolVector(in, params.p)};
    const auto shares = deal(params, seed);
    Outcome out;
    out.reserve(params.K * params.L);
    for (const auto& sh : shares)
      out.insert(out.end(), sh.z.elems().begin(), sh.z.elems().end());
    return out;
  };
  const DistTable joint = enumerate(spec, cap);

  std::vector<std::size_t> first(params.L);
  for (std::uint32_t j = 0; j < params.L; ++j) first[j] = j;
  const EntropyValue h1 = entropy(joint.marginal(first), params.p);
  const EntropyValue hall = entropy(joint, params.p);
  if (!h1.exact || !hall.exact)
    throw Error("share distribution unexpectedly non-uniform");

  SchemeMetrics m;
  m.rate = Rational(params.L, static_cast<std::int64_t>(params.K) * params.N);
  m.rho = Rational(h1.exact_value.num, h1.exact_value.den * params.L);
  m.eta = Rational(hall.exact_value.num, hall.exact_value.den * params.L);
  return m;
}

}  // namespace anoncomm

#endif  // ANONCOMM_PROTOCOL_HPP
