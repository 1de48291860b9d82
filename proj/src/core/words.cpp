// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/words.hpp"

#include "core/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace lamprate {

namespace {

constexpr std::string_view kAlphabet = "abcdfghijklmnopqrstuvwxyz";

} // namespace

char WordBackend::letter_char(std::size_t index) {
  if (index >= kAlphabet.size())
    throw UsageError("word backends support at most 25 letters");
  return kAlphabet[index];
}

WordBackend::WordBackend(BackendKind kind, std::vector<bool> involution, const std::vector<Rational> &lengths,
                         SearchLimits limits)
    : GroupBackend(limits), kind_(kind), involution_(std::move(involution)) {
  if (involution_.size() != lengths.size())
    throw ConfigError("one length per letter is required");
  if (involution_.empty() || involution_.size() > kAlphabet.size())
    throw ConfigError("word backends need between 1 and 25 letters");
  std::size_t free_letters = 0;
  for (bool inv : involution_)
    free_letters += inv ? 0 : 1;
  if (free_letters == 0 && involution_.size() < 2)
    throw ConfigError("a single Z/2 factor is finite");
  std::vector<GeneratorInput> inputs;
  for (std::size_t i = 0; i < lengths.size(); ++i)
    inputs.push_back({std::string(1, letter_char(i)), lengths[i], {}});
  install_generators(inputs);
  letter_weight_.resize(rank());
  for (const auto &g : generators().all())
    letter_weight_[static_cast<std::size_t>(std::llabs(g.action.data()[0])) - 1] = g.weight;
}

std::string WordBackend::describe() const {
  if (kind_ == BackendKind::kFreeGroup)
    return "F" + std::to_string(rank());
  std::string out;
  for (std::size_t i = 0; i < rank(); ++i)
    out += (i ? "*" : "") + std::string(involution_[i] ? "Z2" : "Z");
  return out;
}

void WordBackend::multiply_in_place(GroupElement &x, const GroupElement &y) const {
  auto &w = x.data();
  for (Coord letter : y.data()) {
    if (!w.empty() && w.back() == -letter)
      w.pop_back();
    else if (!w.empty() && w.back() == letter && involution_[static_cast<std::size_t>(letter) - 1])
      w.pop_back();
    else
      w.push_back(letter);
  }
}

GroupElement WordBackend::inverse(const GroupElement &x) const {
  GroupElement out;
  out.data().reserve(x.size());
  for (auto it = x.data().rbegin(); it != x.data().rend(); ++it) {
    const Coord letter = *it;
    out.data().push_back(involution_[static_cast<std::size_t>(std::llabs(letter)) - 1] ? letter : -letter);
  }
  return out;
}

void WordBackend::validate(const GroupElement &x) const {
  Coord prev = 0;
  for (Coord letter : x.data()) {
    const auto idx = static_cast<std::size_t>(std::llabs(letter));
    if (letter == 0 || idx > rank())
      throw UsageError("word letter " + std::to_string(letter) + " outside backend " + describe());
    if (involution_[idx - 1] && letter < 0)
      throw UsageError("involution letters are stored positive");
    if (prev == -letter || (prev == letter && involution_[idx - 1]))
      throw UsageError("word is not reduced");
    prev = letter;
  }
}

GroupElement WordBackend::parse(std::string_view text) const {
  GroupElement x;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)))
      continue;
    if (c == 'e' || c == '1')
      continue;
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const auto pos = kAlphabet.find(lower);
    if (pos == std::string_view::npos || pos >= rank())
      throw ConfigError("invalid letter '" + std::string(1, c) + "' for backend " + describe());
    Coord letter = static_cast<Coord>(pos) + 1;
    if (std::isupper(static_cast<unsigned char>(c)) && !involution_[pos])
      letter = -letter;
    GroupElement single{letter};
    multiply_in_place(x, single);
  }
  return x;
}

std::string WordBackend::format(const GroupElement &x) const {
  if (x.data().empty())
    return "e";
  std::string out;
  for (Coord letter : x.data()) {
    const char c = letter_char(static_cast<std::size_t>(std::llabs(letter)) - 1);
    out.push_back(letter < 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
  }
  return out;
}

Length WordBackend::norm(const GroupElement &z) const {
  Length total{0};
  for (Coord letter : z.data())
    total += letter_weight(letter);
  return total;
}

BackendPtr make_free_group(const std::vector<Rational> &lengths, SearchLimits limits) {
  return std::make_shared<WordBackend>(BackendKind::kFreeGroup, std::vector<bool>(lengths.size(), false),
                                       lengths, limits);
}

BackendPtr make_free_product_c2(const std::vector<Rational> &lengths, SearchLimits limits) {
  if (lengths.size() < 2)
    throw ConfigError("free product of Z/2 factors needs rank >= 2");
  return std::make_shared<WordBackend>(BackendKind::kFreeProductC2, std::vector<bool>(lengths.size(), true),
                                       lengths, limits);
}

std::optional<std::int64_t> dihedral_rotation(const GroupElement &x) {
  const auto n = static_cast<std::int64_t>(x.size());
  if (n % 2 != 0)
    return std::nullopt;
  if (n == 0)
    return 0;
  return x.data()[0] == 1 ? n / 2 : -(n / 2);
}

std::optional<std::int64_t> dihedral_reflection(const GroupElement &x) {
  const auto n = static_cast<std::int64_t>(x.size());
  if (n % 2 == 0)
    return std::nullopt;
  // (ab)^u a for u >= 0 starts with a; b = (ba) a starts the negative side.
  return x.data()[0] == 1 ? (n - 1) / 2 : -((n - 1) / 2) - 1;
}

} // namespace lamprate
