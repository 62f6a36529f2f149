#include "qclab/primitives/backends.hpp"

#include <bit>
#include <unordered_set>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"

namespace qclab {
namespace {

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

bool exhaustive_injective(const std::vector<std::uint64_t>& table) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(table.size() * 2);
  for (std::uint64_t y : table) {
    if (!seen.insert(y).second) return false;
  }
  return true;
}

// 2^n distinct ell-bit values drawn uniformly without replacement.
std::vector<std::uint64_t> random_injection(int n, int ell, Rng& rng) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint64_t> table;
  table.reserve(size);
  std::unordered_set<std::uint64_t> used;
  used.reserve(size * 2);
  while (table.size() < size) {
    const std::uint64_t y = rng.bits(ell);
    if (used.insert(y).second) table.push_back(y);
  }
  return table;
}

std::uint64_t arx_mix(std::uint64_t x, const std::uint64_t (&round_keys)[5], int ell) {
  std::uint64_t v = x ^ round_keys[0];
  constexpr int kRot[4] = {13, 29, 41, 7};
  for (int r = 0; r < 4; ++r) {
    v += round_keys[r + 1];
    v = std::rotl(v, kRot[r]) ^ (v >> 17);
    v += std::rotl(v, 32);
  }
  return ell == 0 ? 0 : v >> (64 - ell);
}

void check_flags(const Json& j, bool injective) {
  if (j.contains("flags") && j["flags"].contains("injective") &&
      j["flags"]["injective"].get<bool>() != injective) {
    throw ConfigError("descriptor injectivity flag does not match the rebuilt table");
  }
}

}  // namespace

// ---- ToyOwf ----------------------------------------------------------------

ToyOwf::ToyOwf(std::string kind, int n, int ell, std::uint64_t seed)
    : kind_(std::move(kind)), n_(n), ell_(ell), seed_(seed) {
  if (n < 0 || n > kMaxOwfInputBits) {
    throw ParamTooLarge("toy OWF input length must lie in [0, " +
                        std::to_string(kMaxOwfInputBits) + "]");
  }
  if (ell < 0 || ell > 63) throw ParamTooLarge("toy OWF output length must lie in [0, 63]");
  Rng rng(seed);
  const std::size_t size = std::size_t{1} << n;
  if (kind_ == "random_table") {
    table_.resize(size);
    for (auto& y : table_) y = rng.bits(ell);
  } else if (kind_ == "random_injection") {
    if (ell < n) throw InvalidArgument("an injection needs ell >= n");
    table_ = random_injection(n, ell, rng);
  } else if (kind_ == "arx") {
    std::uint64_t keys[5];
    for (auto& k : keys) k = rng.next_u64();
    table_.resize(size);
    for (std::size_t x = 0; x < size; ++x) table_[x] = arx_mix(x, keys, ell);
  } else {
    throw InvalidArgument("unknown toy OWF kind '" + kind_ + "'");
  }
  injective_ = exhaustive_injective(table_);
}

std::uint64_t ToyOwf::operator()(std::uint64_t x) const {
  if (x > low_mask(n_)) throw IndexOutOfRange("OWF input has more than n bits");
  return table_[x];
}

Json ToyOwf::to_json() const {
  return {{"kind", kind_}, {"n", n_}, {"ell", ell_}, {"seed", seed_},
          {"flags", {{"injective", injective_}}}};
}

ToyOwf ToyOwf::from_json(const Json& j) {
  ToyOwf f(j.at("kind").get<std::string>(), j.at("n").get<int>(), j.at("ell").get<int>(),
           j.at("seed").get<std::uint64_t>());
  check_flags(j, f.injective_);
  return f;
}

ToyOwf make_toy_owf(const std::string& kind, int n, int ell, Rng& rng) {
  return ToyOwf(kind, n, ell, rng.next_u64());
}

// ---- ToyPrg ----------------------------------------------------------------

ToyPrg::ToyPrg(std::string kind, int n, std::uint64_t seed)
    : kind_(std::move(kind)), n_(n), seed_(seed) {
  if (n < 1 || n > kMaxPrgSeedBits) {
    throw ParamTooLarge("toy PRG seed length must lie in [1, " + std::to_string(kMaxPrgSeedBits) +
                        "]");
  }
  const std::size_t size = std::size_t{1} << n;
  if (kind_ == "random_injection") {
    Rng rng(seed);
    table_ = random_injection(n, 2 * n, rng);
  } else if (kind_ == "identity") {
    table_.resize(size);
    for (std::size_t x = 0; x < size; ++x) table_[x] = (x << n) | x;
  } else {
    throw InvalidArgument("unknown toy PRG kind '" + kind_ + "'");
  }
  injective_ = exhaustive_injective(table_);
}

std::uint64_t ToyPrg::operator()(std::uint64_t x) const {
  if (x > low_mask(n_)) throw IndexOutOfRange("PRG seed has more than n bits");
  return table_[x];
}

Json ToyPrg::to_json() const {
  return {{"kind", kind_}, {"n", n_}, {"ell", 2 * n_}, {"seed", seed_},
          {"flags", {{"injective", injective_}}}};
}

ToyPrg ToyPrg::from_json(const Json& j) {
  ToyPrg g(j.at("kind").get<std::string>(), j.at("n").get<int>(), j.at("seed").get<std::uint64_t>());
  if (j.contains("ell") && j["ell"].get<int>() != 2 * g.n_) {
    throw ConfigError("a toy PRG always doubles its input length");
  }
  check_flags(j, g.injective_);
  return g;
}

ToyPrg make_toy_prg(int n, Rng& rng, const std::string& kind) {
  return ToyPrg(kind, n, rng.next_u64());
}

// ---- HaarPrsg --------------------------------------------------------------

HaarPrsg::HaarPrsg(int n, int m, std::uint64_t seed) : n_(n), m_(m), seed_(seed) {
  if (n < 0 || m < 0 || n + m > 24) throw ParamTooLarge("Haar PRSG table would exceed 2^24 amplitudes");
  require_within_cap(m, "haar_prsg");
  const Rng root(seed);
  const std::uint64_t count = std::uint64_t{1} << n;
  states_.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    Rng r = root.child(k);
    states_.push_back(haar_sample(m, r));
  }
}

const PureState& HaarPrsg::state(std::uint64_t key) const {
  if (key >= states_.size()) throw IndexOutOfRange("PRSG key has more than n bits");
  return states_[key];
}

Json HaarPrsg::to_json() const {
  return {{"kind", "haar_prsg"}, {"n", n_}, {"m", m_}, {"seed", seed_}, {"flags", Json::object()}};
}

HaarPrsg HaarPrsg::from_json(const Json& j) {
  if (j.contains("kind") && j["kind"] != "haar_prsg") throw ConfigError("not a haar_prsg descriptor");
  return HaarPrsg(j.at("n").get<int>(), j.at("m").get<int>(), j.at("seed").get<std::uint64_t>());
}

HaarPrsg make_haar_prsg(int n, int m, Rng& rng) { return HaarPrsg(n, m, rng.next_u64()); }

}  // namespace qclab
