// Copyright 2026 The PbSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pbsa/policy/label.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "pbsa/policy/error.h"

namespace pbsa {

SecurityLabel::SecurityLabel(int rank) : rank_(rank) {
  if (rank < 1) {
    throw std::invalid_argument("security label rank must be >= 1, got " +
                                std::to_string(rank));
  }
}

std::optional<SecurityLabel> SecurityLabel::Parse(std::string_view text) {
  if (text.size() < 3 || text.substr(0, 2) != "SL") return std::nullopt;
  std::string_view digits = text.substr(2);
  if (digits.size() > 6) return std::nullopt;
  int rank = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), rank);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || rank < 1) {
    return std::nullopt;
  }
  return SecurityLabel(rank);
}

LabelConstraint::LabelConstraint(SecurityLabel base, LabelRelation relation)
    : base_(base), relation_(relation) {
  if (relation == LabelRelation::kAny) {
    throw std::invalid_argument("kAny label constraint takes no base label");
  }
}

bool LabelConstraint::SatisfiedBy(SecurityLabel label) const {
  switch (relation_) {
    case LabelRelation::kAny:
      return true;
    case LabelRelation::kEq:
      return label == *base_;
    case LabelRelation::kGeq:
      return label >= *base_;
    case LabelRelation::kLeq:
      return label <= *base_;
  }
  return false;
}

std::string LabelConstraint::ToString() const {
  switch (relation_) {
    case LabelRelation::kAny:
      return "*";
    case LabelRelation::kEq:
      return base_->ToString();
    case LabelRelation::kGeq:
      return base_->ToString() + "+=";
    case LabelRelation::kLeq:
      return base_->ToString() + "-=";
  }
  return "*";
}

LabelConstraint ParseLabelConstraint(std::string_view text) {
  const std::string input(text);
  if (text.empty()) throw ParseError("empty label constraint", input, 0);
  if (text == "*") return LabelConstraint::Any();
  if (text.substr(0, 2) != "SL") {
    throw ParseError("label constraint must start with \"SL\"", input, 0);
  }
  size_t end = 2;
  while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
  if (end == 2) throw ParseError("missing label rank", input, 2);
  auto label = SecurityLabel::Parse(text.substr(0, end));
  if (!label) throw ParseError("invalid label rank", input, 2);
  std::string_view suffix = text.substr(end);
  if (suffix.empty()) return {*label, LabelRelation::kEq};
  if (suffix == "+=") return {*label, LabelRelation::kGeq};
  if (suffix == "-=") return {*label, LabelRelation::kLeq};
  throw ParseError("unknown label relation \"" + std::string(suffix) + "\"",
                   input, end);
}

LabelRange LabelRange::From(const LabelConstraint& c) {
  switch (c.relation()) {
    case LabelRelation::kAny:
      return {};
    case LabelRelation::kEq:
      return {c.base()->rank(), c.base()->rank()};
    case LabelRelation::kGeq:
      return {c.base()->rank(), std::nullopt};
    case LabelRelation::kLeq:
      return {1, c.base()->rank()};
  }
  return {};
}

LabelRange LabelRange::Intersect(const LabelRange& other) const {
  LabelRange out;
  out.lo = std::max(lo, other.lo);
  if (hi && other.hi) {
    out.hi = std::min(*hi, *other.hi);
  } else {
    out.hi = hi ? hi : other.hi;
  }
  return out;
}

std::string LabelRange::ToString() const {
  if (!Satisfiable()) return "UNSAT";
  if (hi && *hi == lo) return "SL" + std::to_string(lo);
  if (!hi) return lo <= 1 ? "*" : "SL" + std::to_string(lo) + "+=";
  if (lo <= 1) return "SL" + std::to_string(*hi) + "-=";
  return "SL" + std::to_string(lo) + "+=;SL" + std::to_string(*hi) + "-=";
}

}  // namespace pbsa
