#include <numeric>

#include "pdwb/attacks.hpp"
#include "pdwb/word.hpp"

namespace pdwb {

bool RecoveredKey::resolved(std::size_t l) const {
  switch (equivalence.at(l)) {
    case Equivalence::Exact:
      return K_est[l].fully_determined();
    case Equivalence::MsbFree:
      return K_est[l].low_bits_determined();
    case Equivalence::ChainSeed:
      return K_est[0].fully_determined();
  }
  return false;
}

std::size_t RecoveredKey::resolved_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < K_est.size(); ++l) n += resolved(l) ? 1 : 0;
  return n;
}

KeyMaterial RecoveredKey::to_key_material() const {
  KeyMaterial km;
  km.cipher = cipher;
  km.height = height;
  km.width = width;
  km.K.reserve(K_est.size());
  for (const auto& e : K_est) km.K.push_back(static_cast<std::uint8_t>(e.value));
  km.U = U_est;
  km.V = V_est;
  if (cipher == CipherId::Parvin && km.U.empty()) {
    km.U.assign(height, static_cast<std::uint32_t>(width));
    km.V.assign(width, static_cast<std::uint32_t>(height));
  }
  if (cipher == CipherId::Yang && km.U.empty()) {
    km.U.resize(width);
    km.V.resize(height);
    std::iota(km.U.begin(), km.U.end(), 1u);
    std::iota(km.V.begin(), km.V.end(), 1u);
  }
  return km;
}

double recovery_rate(const RecoveredKey& est, const KeyMaterial& truth) {
  if (est.K_est.size() != truth.K.size() || est.equivalence.size() != truth.K.size()) {
    throw ContractViolation("estimate and key material differ in length");
  }
  const auto& K = truth.K;
  std::size_t good = 0;
  for (std::size_t l = 0; l < K.size(); ++l) {
    const auto v = static_cast<std::uint8_t>(est.K_est[l].value);
    switch (est.equivalence[l]) {
      case Equivalence::Exact:
        good += v == K[l];
        break;
      case Equivalence::MsbFree:
        good += ((v ^ K[l]) & 0x7F) == 0;
        break;
      case Equivalence::ChainSeed: {
        const auto guess = parvin_mix(static_cast<std::uint8_t>(est.K_est[0].value),
                                      static_cast<std::uint8_t>(est.K_est[1].value));
        good += guess == parvin_mix(K[0], K[1]);
        break;
      }
    }
  }
  return 100.0 * static_cast<double>(good) / static_cast<double>(K.size());
}

}  // namespace pdwb
