#pragma once

// Encryption oracles. An oracle hides KeyMaterial and enforces one attack
// model: a known-plaintext oracle only hands out (random P, C) samples, a
// chosen-plaintext oracle only encrypts caller images. Every call counts as
// one query.

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "pdwb/ciphers.hpp"
#include "pdwb/image.hpp"
#include "pdwb/prng.hpp"

namespace pdwb {

enum class AttackModel { KnownPlaintext, ChosenPlaintext };

std::string_view to_string(AttackModel model);  // "kp" / "cp"
/// Accepts "kp" and "cp". Throws std::invalid_argument.
AttackModel parse_model(std::string_view name);

/// The caller asked for something its attack model forbids, or the oracle's
/// answers contradict the cipher structure an attack relies on.
class ModelViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlainCipherPair {
  Image plain;
  Image cipher;
};

class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual AttackModel model() const = 0;
  virtual std::size_t height() const = 0;
  virtual std::size_t width() const = 0;

  /// Chosen-plaintext query.
  virtual Image encrypt(const Image& plain) = 0;
  /// Known-plaintext query.
  virtual PlainCipherPair sample() = 0;

  virtual std::size_t query_count() const = 0;

  void require_model(AttackModel wanted) const;
};

/// In-process oracle over a hidden key. Known-plaintext samples are uniform
/// random images drawn from a SplitMix64 stream seeded with sample_seed.
class LocalOracle final : public Oracle {
 public:
  LocalOracle(KeyMaterial km, AttackModel model, std::uint64_t sample_seed = 0);

  AttackModel model() const override { return model_; }
  std::size_t height() const override { return km_.height; }
  std::size_t width() const override { return km_.width; }

  Image encrypt(const Image& plain) override;
  PlainCipherPair sample() override;
  std::size_t query_count() const override;

  CipherId cipher() const { return km_.cipher; }

  /// Test hook: ground truth for soundness and recovery-rate checks.
  const KeyMaterial& hidden_key() const { return km_; }

 private:
  KeyMaterial km_;
  AttackModel model_;
  mutable std::mutex mu_;
  SplitMixStream sampler_;
  std::size_t queries_ = 0;
};

/// Presents the ciphertexts of an inner oracle through a fixed transform.
/// Used to attack a diffusion stage once its permutation is known.
template <class Transform>
class MappedOracle final : public Oracle {
 public:
  MappedOracle(Oracle& inner, Transform transform)
      : inner_(inner), transform_(std::move(transform)) {}

  AttackModel model() const override { return inner_.model(); }
  std::size_t height() const override { return inner_.height(); }
  std::size_t width() const override { return inner_.width(); }
  Image encrypt(const Image& plain) override { return transform_(inner_.encrypt(plain)); }
  PlainCipherPair sample() override {
    auto pair = inner_.sample();
    pair.cipher = transform_(pair.cipher);
    return pair;
  }
  std::size_t query_count() const override { return inner_.query_count(); }

 private:
  Oracle& inner_;
  Transform transform_;
};

}  // namespace pdwb
