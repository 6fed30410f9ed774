#pragma once

// The interim automaton N(S) and the partial DFA M accepting the words whose
// compositions are irreducible.
//
// N reads a word right to left (innermost letter first). Starting from the
// start state I, the letter f leads to the distinguished state <-b_f>, and
// afterwards every letter g maps a state carrying the value c to the regular
// state (g(c)). The word f1...fk is accepted by N exactly when the last
// chain value (f1 o ... o f_{k-1})(-b_k) is a nonsquare, so a word is
// irreducible iff all of its prefixes are accepted by N. M is obtained by
// reversing N, determinizing, and deleting the non-accepting subsets.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quadcomp/composition.hpp"

namespace quadcomp {

struct NState {
  enum class Kind : std::uint8_t { Start, Dist, Reg };
  Kind kind = Kind::Start;
  FqCtx::Rep value = 0;  // unused for Start

  std::string to_string(const FqCtx& F) const;  // "I", "<a>", "(a)"
  friend bool operator==(const NState&, const NState&) = default;
};

using StateId = std::uint32_t;

class AutomatonN {
 public:
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_letters() const noexcept { return alphabet_.size(); }
  StateId start() const noexcept { return 0; }
  const NState& state(StateId s) const { return states_.at(s); }
  const std::vector<NState>& states() const noexcept { return states_; }
  bool accepting(StateId s) const { return accepting_.at(s) != 0; }
  StateId next(StateId s, LetterIndex f) const {
    return delta_[static_cast<std::size_t>(s) * num_letters() + f];
  }
  // True after merge_distinguished: Dist(a) and Reg(a) share one state.
  bool merged() const noexcept { return merged_; }
  std::optional<StateId> find(const NState& s) const;

  // States reachable from the start state.
  std::vector<bool> reachable() const;

 private:
  friend AutomatonN build_interim(const Alphabet& S);
  friend AutomatonN merge_distinguished(const AutomatonN& N);

  explicit AutomatonN(Alphabet S) : alphabet_(std::move(S)) {}

  Alphabet alphabet_;
  std::vector<NState> states_;
  std::vector<StateId> delta_;
  std::vector<std::uint8_t> accepting_;
  bool merged_ = false;
};

// 2q + 1 states: I = 0, <a> = 1 + a, (a) = 1 + q + a. EmptyAlphabet.
AutomatonN build_interim(const Alphabet& S);

// Identifies <a> with (a); only valid when -1 is a square in F_q
// (InvalidArgument otherwise). Result has q + 1 states: I = 0, (a) = 1 + a.
AutomatonN merge_distinguished(const AutomatonN& N);

class PartialDfaM {
 public:
  static constexpr StateId kNone = UINT32_MAX;

  PartialDfaM(Alphabet S, std::size_t num_states,
              std::vector<StateId> delta,
              std::vector<std::string> subsets = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_letters() const noexcept { return alphabet_.size(); }
  StateId start() const noexcept { return 0; }
  // kNone when undefined.
  StateId next(StateId s, LetterIndex f) const {
    return delta_[static_cast<std::size_t>(s) * num_letters() + f];
  }
  std::size_t num_transitions() const noexcept;
  const std::vector<StateId>& table() const noexcept { return delta_; }
  // Interim-state subset behind each state, as a sorted "{I,<3>,(2)}"
  // label; empty when not tracked (after minimization).
  const std::vector<std::string>& subsets() const noexcept { return subsets_; }

 private:
  Alphabet alphabet_;
  std::size_t num_states_;
  std::vector<StateId> delta_;
  std::vector<std::string> subsets_;
};

// Reverse the part of N reachable from I, determinize from its accepting
// states, and keep only subsets containing I. States are numbered in
// breadth-first discovery order (letters in alphabet order). BudgetExceeded
// beyond max_states.
PartialDfaM reverse_subset_prune(const AutomatonN& N,
                                 std::size_t max_states = 1u << 20);

// Convenience: build_interim + reverse_subset_prune.
PartialDfaM build_partial_dfa(const Alphabet& S,
                              std::size_t max_states = 1u << 20);

// State reached after reading w, or nullopt if a transition is undefined.
std::optional<StateId> run(const PartialDfaM& M, const Word& w);
bool accepts(const PartialDfaM& M, const Word& w);

struct LazyResult {
  bool accepted = true;
  std::size_t failing_prefix = 0;  // 1-based length of the first rejected
                                   // prefix, 0 when accepted
};

// Backward subset simulation on N without materializing M.
LazyResult lazy_run(const AutomatonN& N, const Word& w);
bool lazy_accepts(const AutomatonN& N, const Word& w);

using BigCount = boost::multiprecision::cpp_int;

// Number of accepted words of length n.
BigCount count_accepted(const PartialDfaM& M, std::size_t n);
// Counts for every length 0..n.
std::vector<BigCount> count_accepted_upto(const PartialDfaM& M, std::size_t n);

// Moore partition refinement with undefined transitions as a dead class.
PartialDfaM minimize(const PartialDfaM& M);

// Breadth-first renumbering from the start state; two partial DFAs over the
// same letter order are isomorphic iff their canonical tables agree.
std::vector<StateId> canonical_table(const PartialDfaM& M);
bool isomorphic(const PartialDfaM& A, const PartialDfaM& B);

enum class ExportFormat { Text, Dot, Json };

ExportFormat parse_export_format(std::string_view name);  // UnsupportedFormat

struct ExportOptions {
  bool trim = false;  // N only: omit states unreachable from I
};

std::string export_automaton(const AutomatonN& N, ExportFormat format,
                             ExportOptions opts = {});
std::string export_automaton(const PartialDfaM& M, ExportFormat format);

// Inverse of the JSON export of M.
PartialDfaM partial_dfa_from_json(std::string_view json);

}  // namespace quadcomp
