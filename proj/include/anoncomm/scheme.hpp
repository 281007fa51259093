#ifndef ANONCOMM_SCHEME_HPP
#define ANONCOMM_SCHEME_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "anoncomm/protocol.hpp"

namespace anoncomm {

/// Abstract round behavior checked by the property verifier: shares as a
/// deterministic function of a uniform seed index, per-transmitter encoders
/// that see only their own desire flag, and a theta-free decoder.
class Scheme {
 public:
  virtual ~Scheme() = default;

  virtual std::string name() const = 0;
  virtual SchemeParams params() const = 0;

  /// Number of equally likely seed values.
  virtual std::uint64_t seed_states() const = 0;

  /// K shares (each length L) for one seed realization.
  virtual std::vector<SymbolVector> shares(std::uint64_t seed_index) const = 0;

  /// Signal of transmitter i (1-based), length N.
  virtual SymbolVector signal(std::uint32_t i, bool desired, const SymbolVector& w,
                              const SymbolVector& z) const = 0;

  /// Decoder; must not depend on theta.
  virtual SymbolVector decode_transcript(
      const std::vector<SymbolVector>& transcript) const = 0;
};

/// The built-in addition scheme.
class AdditionScheme : public Scheme {
 public:
  explicit AdditionScheme(SchemeParams params) : params_(params) {
    params_.validate();
    if (params_.N != params_.L) throw Error("built-in scheme requires N = L");
  }

  std::string name() const override { return "addition"; }
  SchemeParams params() const override { return params_; }
  std::uint64_t seed_states() const override { return params_.seed_states(); }

  std::vector<SymbolVector> shares(std::uint64_t seed_index) const override {
    std::vector<std::uint32_t> a(params_.seed_length());
    for (std::size_t i = a.size(); i-- > 0;) {
      a[i] = static_cast<std::uint32_t>(seed_index % params_.p);
      seed_index /= params_.p;
    }
    const auto dealt = deal(params_, Seed{SymbolVector(std::move(a), params_.p)});
    std::vector<SymbolVector> out;
    out.reserve(dealt.size());
    for (const auto& sh : dealt) out.push_back(sh.z);
    return out;
  }

  SymbolVector signal(std::uint32_t i, bool desired, const SymbolVector& w,
                      const SymbolVector& z) const override {
    return encode(i, DesireFlag{desired}, Message{w}, Share{i, z});
  }

  SymbolVector decode_transcript(
      const std::vector<SymbolVector>& transcript) const override {
    return decode(Transcript{transcript}).w;
  }

 protected:
  SchemeParams params_;
};

// ---------------------------------------------------------------------------
// Mutant fixtures. Each one breaks exactly one guarantee and is used to
// exercise the corresponding check's failure path.
// ---------------------------------------------------------------------------

/// Decoder ignores the last signal: correctness fails whenever Z_K != 0.
class DroppedSignalDecoderScheme : public AdditionScheme {
 public:
  using AdditionScheme::AdditionScheme;
  std::string name() const override { return "mutant-dropped-signal-decoder"; }
  SymbolVector decode_transcript(
      const std::vector<SymbolVector>& transcript) const override {
    std::vector<SymbolVector> trimmed(transcript.begin(), transcript.end() - 1);
    return decode(Transcript{trimmed}).w;
  }
};

/// No masking at all: desired transmitter sends W in the clear, everyone else
/// sends zero. Anonymity fails (the nonzero coordinate names theta).
class NaiveUnmaskedScheme : public AdditionScheme {
 public:
  using AdditionScheme::AdditionScheme;
  std::string name() const override { return "mutant-naive-unmasked"; }
  SymbolVector signal(std::uint32_t, bool desired, const SymbolVector& w,
                      const SymbolVector& z) const override {
    return desired ? w : SymbolVector::zero(z.size(), z.modulus());
  }
};

/// Transmitter 2 sends W_2 in the clear when undesired: security and
/// share-determinism fail.
class LeakyUndesiredScheme : public AdditionScheme {
 public:
  using AdditionScheme::AdditionScheme;
  std::string name() const override { return "mutant-leaky-undesired"; }
  SymbolVector signal(std::uint32_t i, bool desired, const SymbolVector& w,
                      const SymbolVector& z) const override {
    if (i == 2 && !desired) return w;
    return AdditionScheme::signal(i, desired, w, z);
  }
};

/// Every transmitter always sends zero: transcript is a point mass.
class PointMassScheme : public AdditionScheme {
 public:
  using AdditionScheme::AdditionScheme;
  std::string name() const override { return "mutant-point-mass"; }
  SymbolVector signal(std::uint32_t, bool, const SymbolVector&,
                      const SymbolVector& z) const override {
    return SymbolVector::zero(z.size(), z.modulus());
  }
};

/// Decoder returns a constant: Latin structure fails.
class ConstantDecoderScheme : public AdditionScheme {
 public:
  using AdditionScheme::AdditionScheme;
  std::string name() const override { return "mutant-constant-decoder"; }
  SymbolVector decode_transcript(const std::vector<SymbolVector>&) const override {
    return SymbolVector::zero(params_.L, params_.p);
  }
};

inline std::unique_ptr<Scheme> make_mutant(const std::string& name,
                                           SchemeParams params) {
  if (name == "dropped-signal-decoder")
    return std::make_unique<DroppedSignalDecoderScheme>(params);
  if (name == "naive-unmasked") return std::make_unique<NaiveUnmaskedScheme>(params);
  if (name == "leaky-undesired") return std::make_unique<LeakyUndesiredScheme>(params);
  if (name == "point-mass") return std::make_unique<PointMassScheme>(params);
  if (name == "constant-decoder")
    return std::make_unique<ConstantDecoderScheme>(params);
  throw Error("unknown mutant scheme: " + name);
}

}  // namespace anoncomm

#endif  // ANONCOMM_SCHEME_HPP
