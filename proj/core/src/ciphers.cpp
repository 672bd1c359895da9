#include "pdwb/ciphers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pdwb/dea.hpp"
#include "pdwb/prng.hpp"
#include "pdwb/word.hpp"

namespace pdwb {

std::string_view to_string(CipherId id) {
  switch (id) {
    case CipherId::Parvin:
      return "parvin";
    case CipherId::Norouzi:
      return "norouzi";
    case CipherId::Yang:
      return "yang";
  }
  return "?";
}

CipherId parse_cipher(std::string_view name) {
  if (name == "parvin") return CipherId::Parvin;
  if (name == "norouzi") return CipherId::Norouzi;
  if (name == "yang") return CipherId::Yang;
  throw std::invalid_argument("unknown cipher '" + std::string(name) + "'");
}

namespace {

std::vector<std::uint32_t> draw_shifts(SplitMixStream& rng, std::size_t count,
                                       std::size_t bound) {
  std::vector<std::uint32_t> out(count);
  for (auto& v : out) v = 1 + rng.uniform_below(static_cast<std::uint32_t>(bound));
  return out;
}

std::vector<std::uint32_t> draw_permutation(SplitMixStream& rng, std::size_t m) {
  std::vector<std::uint32_t> out(m);
  std::iota(out.begin(), out.end(), 1u);
  for (std::size_t i = m - 1; i >= 1; --i) {
    const std::size_t j = rng.uniform_below(static_cast<std::uint32_t>(i + 1));
    std::swap(out[i], out[j]);
  }
  return out;
}

bool is_permutation_of_1_to_m(std::span<const std::uint32_t> v) {
  std::vector<bool> seen(v.size() + 1, false);
  for (const auto x : v) {
    if (x == 0 || x > v.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

void require_shape(const Image& img, const KeyMaterial& km) {
  if (img.height() != km.height || img.width() != km.width) {
    throw ContractViolation("image is " + std::to_string(img.height()) + "x" +
                            std::to_string(img.width()) + " but key material is sized for " +
                            std::to_string(km.height) + "x" + std::to_string(km.width));
  }
}

void require_cipher(const KeyMaterial& km, CipherId id) {
  if (km.cipher != id) {
    throw ContractViolation("key material belongs to " + std::string(to_string(km.cipher)) +
                            ", not " + std::string(to_string(id)));
  }
}

void require_key_length(std::span<const std::uint8_t> K, std::size_t L) {
  if (K.size() != L + 1) {
    throw ContractViolation("key stream has " + std::to_string(K.size()) + " bytes, expected " +
                            std::to_string(L + 1));
  }
}

}  // namespace

KeyMaterial key_schedule(const Seed& seed, std::size_t height, std::size_t width) {
  if (height < 2 || width < 2) throw ContractViolation("cipher images need H, W >= 2");
  SplitMixStream rng(seed.master);
  KeyMaterial km;
  km.cipher = seed.cipher;
  km.height = height;
  km.width = width;
  km.K.resize(height * width + 1);
  for (auto& k : km.K) k = rng.next_byte();
  switch (seed.cipher) {
    case CipherId::Parvin:
      km.U = draw_shifts(rng, height, width);
      km.V = draw_shifts(rng, width, height);
      break;
    case CipherId::Yang:
      km.U = draw_permutation(rng, width);
      km.V = draw_permutation(rng, height);
      break;
    case CipherId::Norouzi:
      break;
  }
  return km;
}

void validate(const KeyMaterial& km) {
  if (km.height < 2 || km.width < 2) throw ContractViolation("key material needs H, W >= 2");
  require_key_length(km.K, km.length());
  switch (km.cipher) {
    case CipherId::Parvin:
      if (km.U.size() != km.height || km.V.size() != km.width) {
        throw ContractViolation("parvin shift streams are mis-sized");
      }
      for (const auto u : km.U) {
        if (u < 1 || u > km.width) throw ContractViolation("row shift outside [1, W]");
      }
      for (const auto v : km.V) {
        if (v < 1 || v > km.height) throw ContractViolation("column shift outside [1, H]");
      }
      break;
    case CipherId::Yang:
      if (km.U.size() != km.width || km.V.size() != km.height) {
        throw ContractViolation("yang permutation streams are mis-sized");
      }
      if (!is_permutation_of_1_to_m(km.U) || !is_permutation_of_1_to_m(km.V)) {
        throw ContractViolation("yang U and V must be bijections");
      }
      break;
    case CipherId::Norouzi:
      if (!km.U.empty() || !km.V.empty()) {
        throw ContractViolation("norouzi key material carries no permutation streams");
      }
      break;
  }
}

std::pair<std::size_t, std::size_t> parvin_route(std::size_t row, std::size_t col,
                                                 std::span<const std::uint32_t> U,
                                                 std::span<const std::uint32_t> V,
                                                 std::size_t height, std::size_t width) {
  const std::size_t col2 = (col + U[row]) % width;
  const std::size_t row2 = (row + V[col2]) % height;
  return {row2, col2};
}

Image parvin_permute(const Image& P, std::span<const std::uint32_t> U,
                     std::span<const std::uint32_t> V) {
  const std::size_t H = P.height();
  const std::size_t W = P.width();
  Image S(H, W, 0);
  for (std::size_t i = 0; i < H; ++i) {
    for (std::size_t j = 0; j < W; ++j) {
      const auto [r, c] = parvin_route(i, j, U, V, H, W);
      S.at(r, c) = P.at(i, j);
    }
  }
  return S;
}

Image parvin_unpermute(const Image& S, std::span<const std::uint32_t> U,
                       std::span<const std::uint32_t> V) {
  const std::size_t H = S.height();
  const std::size_t W = S.width();
  Image P(H, W, 0);
  for (std::size_t i = 0; i < H; ++i) {
    for (std::size_t j = 0; j < W; ++j) {
      const auto [r, c] = parvin_route(i, j, U, V, H, W);
      P.at(i, j) = S.at(r, c);
    }
  }
  return P;
}

Image parvin_diffuse(const Image& S, std::span<const std::uint8_t> K) {
  const std::size_t L = S.size();
  require_key_length(K, L);
  Image C(S.height(), S.width(), 0);
  std::uint8_t prev = K[0];
  for (std::size_t l = 1; l <= L; ++l) {
    const auto c = static_cast<std::uint8_t>(S.pos(l) ^ parvin_mix(prev, K[l]));
    C.pos(l) = c;
    prev = c;
  }
  return C;
}

Image parvin_undiffuse(const Image& C, std::span<const std::uint8_t> K) {
  const std::size_t L = C.size();
  require_key_length(K, L);
  Image S(C.height(), C.width(), 0);
  std::uint8_t prev = K[0];
  for (std::size_t l = 1; l <= L; ++l) {
    S.pos(l) = static_cast<std::uint8_t>(C.pos(l) ^ parvin_mix(prev, K[l]));
    prev = C.pos(l);
  }
  return S;
}

Image bidirectional_diffuse(const Image& P, std::span<const std::uint8_t> K) {
  const std::size_t L = P.size();
  require_key_length(K, L);
  const auto S = suffix_sums(P);
  Image C(P.height(), P.width(), 0);
  std::uint8_t prev = K[0];
  for (std::size_t l = 1; l <= L; ++l) {
    const auto c = static_cast<std::uint8_t>(P.pos(l) ^ static_cast<std::uint8_t>(prev + K[l]) ^
                                             g_mul(S[l], K[l]));
    C.pos(l) = c;
    prev = c;
  }
  return C;
}

Image bidirectional_undiffuse(const Image& chain, std::span<const std::uint8_t> K) {
  const std::size_t L = chain.size();
  require_key_length(K, L);
  Image P(chain.height(), chain.width(), 0);
  std::uint64_t suffix = 0;  // S_l, built from pixels already recovered
  for (std::size_t l = L; l >= 1; --l) {
    const std::uint8_t prev = l == 1 ? K[0] : chain.pos(l - 1);
    const auto p = static_cast<std::uint8_t>(
        chain.pos(l) ^ static_cast<std::uint8_t>(prev + K[l]) ^ g_mul(suffix, K[l]));
    P.pos(l) = p;
    suffix += p;
  }
  return P;
}

Image yang_permute(const Image& Pp, std::span<const std::uint32_t> U,
                   std::span<const std::uint32_t> V) {
  const std::size_t H = Pp.height();
  const std::size_t W = Pp.width();
  Image C(H, W, 0);
  for (std::size_t i = 0; i < H; ++i) {
    for (std::size_t j = 0; j < W; ++j) C.at(V[i] - 1, U[j] - 1) = Pp.at(i, j);
  }
  return C;
}

Image yang_unpermute(const Image& C, std::span<const std::uint32_t> U,
                     std::span<const std::uint32_t> V) {
  const std::size_t H = C.height();
  const std::size_t W = C.width();
  Image Pp(H, W, 0);
  for (std::size_t i = 0; i < H; ++i) {
    for (std::size_t j = 0; j < W; ++j) Pp.at(i, j) = C.at(V[i] - 1, U[j] - 1);
  }
  return Pp;
}

Image parvin_encrypt(const Image& P, const KeyMaterial& km) {
  require_cipher(km, CipherId::Parvin);
  validate(km);
  require_shape(P, km);
  return parvin_diffuse(parvin_permute(P, km.U, km.V), km.K);
}

Image parvin_decrypt(const Image& C, const KeyMaterial& km) {
  require_cipher(km, CipherId::Parvin);
  validate(km);
  require_shape(C, km);
  return parvin_unpermute(parvin_undiffuse(C, km.K), km.U, km.V);
}

Image norouzi_encrypt(const Image& P, const KeyMaterial& km) {
  require_cipher(km, CipherId::Norouzi);
  validate(km);
  require_shape(P, km);
  return bidirectional_diffuse(P, km.K);
}

Image norouzi_decrypt(const Image& C, const KeyMaterial& km) {
  require_cipher(km, CipherId::Norouzi);
  validate(km);
  require_shape(C, km);
  return bidirectional_undiffuse(C, km.K);
}

Image yang_encrypt(const Image& P, const KeyMaterial& km) {
  require_cipher(km, CipherId::Yang);
  validate(km);
  require_shape(P, km);
  return yang_permute(bidirectional_diffuse(P, km.K), km.U, km.V);
}

Image yang_decrypt(const Image& C, const KeyMaterial& km) {
  require_cipher(km, CipherId::Yang);
  validate(km);
  require_shape(C, km);
  return bidirectional_undiffuse(yang_unpermute(C, km.U, km.V), km.K);
}

Image encrypt(const Image& P, const KeyMaterial& km) {
  switch (km.cipher) {
    case CipherId::Parvin:
      return parvin_encrypt(P, km);
    case CipherId::Norouzi:
      return norouzi_encrypt(P, km);
    case CipherId::Yang:
      return yang_encrypt(P, km);
  }
  throw ContractViolation("unknown cipher");
}

Image decrypt(const Image& C, const KeyMaterial& km) {
  switch (km.cipher) {
    case CipherId::Parvin:
      return parvin_decrypt(C, km);
    case CipherId::Norouzi:
      return norouzi_decrypt(C, km);
    case CipherId::Yang:
      return yang_decrypt(C, km);
  }
  throw ContractViolation("unknown cipher");
}

}  // namespace pdwb
