#include "pdwb/oracle.hpp"

#include "pdwb/word.hpp"

namespace pdwb {

std::string_view to_string(AttackModel model) {
  return model == AttackModel::KnownPlaintext ? "kp" : "cp";
}

AttackModel parse_model(std::string_view name) {
  if (name == "kp") return AttackModel::KnownPlaintext;
  if (name == "cp") return AttackModel::ChosenPlaintext;
  throw std::invalid_argument("unknown attack model '" + std::string(name) + "'");
}

void Oracle::require_model(AttackModel wanted) const {
  if (model() != wanted) {
    throw ModelViolation("attack needs a " + std::string(to_string(wanted)) +
                         " oracle, got " + std::string(to_string(model())));
  }
}

LocalOracle::LocalOracle(KeyMaterial km, AttackModel model, std::uint64_t sample_seed)
    : km_(std::move(km)), model_(model), sampler_(sample_seed) {
  validate(km_);
}

Image LocalOracle::encrypt(const Image& plain) {
  if (model_ != AttackModel::ChosenPlaintext) {
    throw ModelViolation("known-plaintext oracle refuses chosen plaintexts");
  }
  if (plain.height() != km_.height || plain.width() != km_.width) {
    throw ContractViolation("query image has the wrong size");
  }
  auto out = pdwb::encrypt(plain, km_);
  std::lock_guard lock(mu_);
  ++queries_;
  return out;
}

PlainCipherPair LocalOracle::sample() {
  if (model_ != AttackModel::KnownPlaintext) {
    throw ModelViolation("chosen-plaintext oracle does not hand out samples");
  }
  Image plain(km_.height, km_.width, 0);
  {
    std::lock_guard lock(mu_);
    for (auto& px : plain.pixels()) px = sampler_.next_byte();
    ++queries_;
  }
  auto cipher = pdwb::encrypt(plain, km_);
  return {std::move(plain), std::move(cipher)};
}

std::size_t LocalOracle::query_count() const {
  std::lock_guard lock(mu_);
  return queries_;
}

}  // namespace pdwb
