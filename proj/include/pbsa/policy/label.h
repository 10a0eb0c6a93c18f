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

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace pbsa {

// Ordered trust level SLn. SL1 is the lowest.
class SecurityLabel {
 public:
  // Throws std::invalid_argument for rank < 1.
  explicit SecurityLabel(int rank);

  // "SL<n>" only; relational suffixes belong to LabelConstraint.
  static std::optional<SecurityLabel> Parse(std::string_view text);

  int rank() const { return rank_; }
  std::string ToString() const { return "SL" + std::to_string(rank_); }

  friend auto operator<=>(const SecurityLabel&,
                          const SecurityLabel&) = default;

 private:
  int rank_;
};

enum class LabelRelation { kAny, kEq, kGeq, kLeq };

// Textual grammar:
//   "*"        any label
//   "SL<n>"    exactly SLn
//   "SL<n>+="  SLn or higher
//   "SL<n>-="  SLn or lower
class LabelConstraint {
 public:
  LabelConstraint() = default;  // kAny
  LabelConstraint(SecurityLabel base, LabelRelation relation);

  static LabelConstraint Any() { return LabelConstraint(); }
  static LabelConstraint AtLeast(int rank) {
    return {SecurityLabel(rank), LabelRelation::kGeq};
  }
  static LabelConstraint AtMost(int rank) {
    return {SecurityLabel(rank), LabelRelation::kLeq};
  }
  static LabelConstraint Exactly(int rank) {
    return {SecurityLabel(rank), LabelRelation::kEq};
  }

  LabelRelation relation() const { return relation_; }
  // Empty iff relation() == kAny.
  const std::optional<SecurityLabel>& base() const { return base_; }
  bool is_any() const { return relation_ == LabelRelation::kAny; }

  bool SatisfiedBy(SecurityLabel label) const;
  std::string ToString() const;

  friend bool operator==(const LabelConstraint&,
                         const LabelConstraint&) = default;

 private:
  std::optional<SecurityLabel> base_;
  LabelRelation relation_ = LabelRelation::kAny;
};

// Throws ParseError naming the offending text and byte position.
LabelConstraint ParseLabelConstraint(std::string_view text);

// Conjunction of label constraints as a closed rank interval. An empty
// interval (lo > hi) is unsatisfiable.
struct LabelRange {
  int lo = 1;
  std::optional<int> hi;

  static LabelRange From(const LabelConstraint& c);

  bool Satisfiable() const { return !hi || lo <= *hi; }
  bool SatisfiedBy(SecurityLabel label) const {
    return label.rank() >= lo && (!hi || label.rank() <= *hi);
  }
  bool IsUnbounded() const { return lo <= 1 && !hi; }
  LabelRange Intersect(const LabelRange& other) const;
  std::string ToString() const;

  friend bool operator==(const LabelRange&, const LabelRange&) = default;
};

}  // namespace pbsa
