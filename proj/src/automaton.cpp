#include "quadcomp/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "quadcomp/error.hpp"

namespace quadcomp {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : b) h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

bool test_bit(const Bits& b, StateId i) { return (b[i >> 6] >> (i & 63)) & 1; }
void set_bit(Bits& b, StateId i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

std::vector<StateId> members(const Bits& b) {
  std::vector<StateId> out;
  for (std::size_t w = 0; w < b.size(); ++w) {
    std::uint64_t v = b[w];
    while (v) {
      const int t = __builtin_ctzll(v);
      out.push_back(static_cast<StateId>(w * 64 + t));
      v &= v - 1;
    }
  }
  return out;
}

std::string m_label(StateId s) { return s == 0 ? "S" : std::to_string(s); }

}  // namespace

std::string NState::to_string(const FqCtx& F) const {
  switch (kind) {
    case Kind::Start: return "I";
    case Kind::Dist: return "<" + F.format(value) + ">";
    case Kind::Reg: return "(" + F.format(value) + ")";
  }
  return "?";
}

std::optional<StateId> AutomatonN::find(const NState& s) const {
  const std::uint32_t q = alphabet_.ctx().q();
  switch (s.kind) {
    case NState::Kind::Start: return 0;
    case NState::Kind::Dist:
      if (merged_) return std::nullopt;
      return 1 + s.value;
    case NState::Kind::Reg: return merged_ ? 1 + s.value : 1 + q + s.value;
  }
  return std::nullopt;
}

std::vector<bool> AutomatonN::reachable() const {
  std::vector<bool> seen(num_states(), false);
  std::deque<StateId> todo{start()};
  seen[start()] = true;
  while (!todo.empty()) {
    const StateId s = todo.front();
    todo.pop_front();
    for (LetterIndex f = 0; f < num_letters(); ++f) {
      const StateId t = next(s, f);
      if (!seen[t]) {
        seen[t] = true;
        todo.push_back(t);
      }
    }
  }
  return seen;
}

AutomatonN build_interim(const Alphabet& S) {
  if (S.empty()) fail(Errc::EmptyAlphabet, "alphabet has no letters");
  const FqCtx& F = S.ctx();
  const std::uint32_t q = F.q();
  const std::size_t L = S.size();
  AutomatonN N(S);
  N.states_.reserve(2 * q + 1);
  N.states_.push_back({NState::Kind::Start, 0});
  for (FqCtx::Rep a = 0; a < q; ++a) N.states_.push_back({NState::Kind::Dist, a});
  for (FqCtx::Rep a = 0; a < q; ++a) N.states_.push_back({NState::Kind::Reg, a});

  N.accepting_.resize(N.states_.size());
  N.accepting_[0] = 1;
  for (FqCtx::Rep a = 0; a < q; ++a) {
    N.accepting_[1 + a] = F.is_nonsquare(F.neg(a));
    N.accepting_[1 + q + a] = F.is_nonsquare(a);
  }

  N.delta_.resize(N.states_.size() * L);
  for (LetterIndex f = 0; f < L; ++f) {
    const MonicQuad& letter = S[f];
    N.delta_[f] = 1 + F.neg(letter.b.rep());
    for (FqCtx::Rep a = 0; a < q; ++a) {
      const StateId image = 1 + q + letter(F.element(a)).rep();
      N.delta_[(1 + a) * L + f] = image;
      N.delta_[(1 + q + a) * L + f] = image;
    }
  }
  return N;
}

AutomatonN merge_distinguished(const AutomatonN& N) {
  const FqCtx& F = N.alphabet().ctx();
  if (F.is_nonsquare(F.minus_one()))
    fail(Errc::InvalidArgument,
         "distinguished states can only be merged when -1 is a square");
  if (N.merged()) return N;
  const std::uint32_t q = F.q();
  const std::size_t L = N.num_letters();
  AutomatonN M(N.alphabet());
  M.merged_ = true;
  M.states_.push_back({NState::Kind::Start, 0});
  for (FqCtx::Rep a = 0; a < q; ++a) M.states_.push_back({NState::Kind::Reg, a});
  M.accepting_.resize(q + 1);
  M.accepting_[0] = 1;
  for (FqCtx::Rep a = 0; a < q; ++a) M.accepting_[1 + a] = F.is_nonsquare(a);
  // Old ids: <a> = 1 + a, (a) = 1 + q + a; both collapse onto 1 + a.
  auto collapse = [q](StateId s) -> StateId {
    return s == 0 ? 0 : (s > q ? s - q : s);
  };
  M.delta_.resize((q + 1) * L);
  for (LetterIndex f = 0; f < L; ++f) {
    M.delta_[f] = collapse(N.next(0, f));
    for (FqCtx::Rep a = 0; a < q; ++a)
      M.delta_[(1 + a) * L + f] = collapse(N.next(1 + q + a, f));
  }
  return M;
}

PartialDfaM::PartialDfaM(Alphabet S, std::size_t num_states,
                         std::vector<StateId> delta,
                         std::vector<std::string> subsets)
    : alphabet_(std::move(S)), num_states_(num_states),
      delta_(std::move(delta)), subsets_(std::move(subsets)) {
  if (num_states_ == 0)
    fail(Errc::InvalidArgument, "partial DFA needs a start state");
  if (delta_.size() != num_states_ * alphabet_.size())
    fail(Errc::InvalidArgument, "transition table has wrong size");
  for (auto t : delta_)
    if (t != kNone && t >= num_states_)
      fail(Errc::InvalidArgument, "transition to unknown state");
  if (!subsets_.empty() && subsets_.size() != num_states_)
    fail(Errc::InvalidArgument, "one subset per state required");
}

std::size_t PartialDfaM::num_transitions() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(delta_.begin(), delta_.end(),
                    [](StateId t) { return t != kNone; }));
}

PartialDfaM reverse_subset_prune(const AutomatonN& N, std::size_t max_states) {
  const std::size_t n = N.num_states();
  const std::size_t L = N.num_letters();
  const std::size_t words = (n + 63) / 64;

  // States unreachable from I never influence whether I lies in a later
  // subset, so they are left out of every subset.
  const std::vector<bool> reach = N.reachable();
  Bits start(words, 0);
  for (StateId s = 0; s < n; ++s)
    if (reach[s] && N.accepting(s)) set_bit(start, s);

  std::unordered_map<Bits, StateId, BitsHash> index;
  std::vector<Bits> subsets;
  std::vector<StateId> delta;
  index.emplace(start, 0);
  subsets.push_back(start);

  // Column f of N, for the predecessor scan.
  std::vector<std::vector<StateId>> column(L, std::vector<StateId>(n));
  for (StateId s = 0; s < n; ++s)
    for (LetterIndex f = 0; f < L; ++f) column[f][s] = N.next(s, f);

  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    delta.resize((cur + 1) * L, PartialDfaM::kNone);
    for (LetterIndex f = 0; f < L; ++f) {
      const Bits& T = subsets[cur];
      Bits pred(words, 0);
      for (StateId s = 0; s < n; ++s)
        if (reach[s] && test_bit(T, column[f][s])) set_bit(pred, s);
      // Subsets without I are rejecting in the determinized reversal.
      if (!test_bit(pred, N.start())) continue;
      auto [it, inserted] =
          index.emplace(std::move(pred), static_cast<StateId>(subsets.size()));
      if (inserted) {
        if (subsets.size() >= max_states)
          fail(Errc::BudgetExceeded, "subset construction exceeds " +
                                         std::to_string(max_states) +
                                         " states");
        subsets.push_back(it->first);
      }
      delta[cur * L + f] = it->second;
    }
  }

  const FqCtx& F = N.alphabet().ctx();
  std::vector<std::string> named;
  named.reserve(subsets.size());
  for (const auto& b : subsets) {
    std::string label = "{";
    for (StateId t : members(b)) {
      if (label.size() > 1) label += ',';
      label += N.state(t).to_string(F);
    }
    named.push_back(label + "}");
  }
  return PartialDfaM(N.alphabet(), subsets.size(), std::move(delta),
                     std::move(named));
}

PartialDfaM build_partial_dfa(const Alphabet& S, std::size_t max_states) {
  return reverse_subset_prune(build_interim(S), max_states);
}

std::optional<StateId> run(const PartialDfaM& M, const Word& w) {
  StateId s = M.start();
  for (auto f : w.letters) {
    if (f >= M.num_letters())
      fail(Errc::IndexOutOfRange, "letter outside alphabet");
    s = M.next(s, f);
    if (s == PartialDfaM::kNone) return std::nullopt;
  }
  return s;
}

bool accepts(const PartialDfaM& M, const Word& w) { return run(M, w).has_value(); }

LazyResult lazy_run(const AutomatonN& N, const Word& w) {
  const std::size_t n = N.num_states();
  std::vector<std::uint8_t> cur(n), prev(n);
  for (StateId s = 0; s < n; ++s) cur[s] = N.accepting(s);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const LetterIndex f = w[i];
    if (f >= N.num_letters())
      fail(Errc::IndexOutOfRange, "letter outside alphabet");
    prev.swap(cur);
    for (StateId s = 0; s < n; ++s) cur[s] = prev[N.next(s, f)];
    if (!cur[N.start()]) return {false, i + 1};
  }
  return {true, 0};
}

bool lazy_accepts(const AutomatonN& N, const Word& w) {
  return lazy_run(N, w).accepted;
}

std::vector<BigCount> count_accepted_upto(const PartialDfaM& M, std::size_t n) {
  std::vector<BigCount> per_state(M.num_states(), 0), next(M.num_states());
  per_state[M.start()] = 1;
  std::vector<BigCount> out;
  for (std::size_t len = 0;; ++len) {
    BigCount total = 0;
    for (const auto& c : per_state) total += c;
    out.push_back(total);
    if (len == n) break;
    std::fill(next.begin(), next.end(), BigCount(0));
    for (StateId s = 0; s < M.num_states(); ++s) {
      if (per_state[s] == 0) continue;
      for (LetterIndex f = 0; f < M.num_letters(); ++f) {
        const StateId t = M.next(s, f);
        if (t != PartialDfaM::kNone) next[t] += per_state[s];
      }
    }
    per_state.swap(next);
  }
  return out;
}

BigCount count_accepted(const PartialDfaM& M, std::size_t n) {
  return count_accepted_upto(M, n).back();
}

std::vector<StateId> canonical_table(const PartialDfaM& M) {
  const std::size_t L = M.num_letters();
  std::vector<StateId> order(M.num_states(), PartialDfaM::kNone);
  std::vector<StateId> visit{M.start()};
  order[M.start()] = 0;
  for (std::size_t i = 0; i < visit.size(); ++i)
    for (LetterIndex f = 0; f < L; ++f) {
      const StateId t = M.next(visit[i], f);
      if (t != PartialDfaM::kNone && order[t] == PartialDfaM::kNone) {
        order[t] = static_cast<StateId>(visit.size());
        visit.push_back(t);
      }
    }
  std::vector<StateId> table(visit.size() * L, PartialDfaM::kNone);
  for (std::size_t i = 0; i < visit.size(); ++i)
    for (LetterIndex f = 0; f < L; ++f) {
      const StateId t = M.next(visit[i], f);
      table[i * L + f] = t == PartialDfaM::kNone ? PartialDfaM::kNone : order[t];
    }
  return table;
}

bool isomorphic(const PartialDfaM& A, const PartialDfaM& B) {
  return A.num_letters() == B.num_letters() &&
         canonical_table(A) == canonical_table(B);
}

PartialDfaM minimize(const PartialDfaM& M) {
  const std::size_t n = M.num_states();
  const std::size_t L = M.num_letters();
  std::vector<StateId> block(n, 0);
  std::size_t blocks = 1;
  while (true) {
    std::map<std::vector<StateId>, StateId> sig_index;
    std::vector<StateId> refined(n);
    for (StateId s = 0; s < n; ++s) {
      std::vector<StateId> sig{block[s]};
      for (LetterIndex f = 0; f < L; ++f) {
        const StateId t = M.next(s, f);
        sig.push_back(t == PartialDfaM::kNone ? PartialDfaM::kNone : block[t]);
      }
      auto [it, _] =
          sig_index.emplace(std::move(sig), static_cast<StateId>(sig_index.size()));
      refined[s] = it->second;
    }
    block.swap(refined);
    if (sig_index.size() == blocks) break;
    blocks = sig_index.size();
  }
  std::vector<StateId> quotient(blocks * L, PartialDfaM::kNone);
  for (StateId s = 0; s < n; ++s)
    for (LetterIndex f = 0; f < L; ++f) {
      const StateId t = M.next(s, f);
      quotient[block[s] * L + f] = t == PartialDfaM::kNone ? PartialDfaM::kNone : block[t];
    }
  // Renumber so the start block is 0, in breadth-first order.
  std::vector<StateId> order(blocks, PartialDfaM::kNone);
  std::vector<StateId> visit{block[M.start()]};
  order[visit[0]] = 0;
  for (std::size_t i = 0; i < visit.size(); ++i)
    for (LetterIndex f = 0; f < L; ++f) {
      const StateId t = quotient[visit[i] * L + f];
      if (t != PartialDfaM::kNone && order[t] == PartialDfaM::kNone) {
        order[t] = static_cast<StateId>(visit.size());
        visit.push_back(t);
      }
    }
  std::vector<StateId> table(visit.size() * L, PartialDfaM::kNone);
  for (std::size_t i = 0; i < visit.size(); ++i)
    for (LetterIndex f = 0; f < L; ++f) {
      const StateId t = quotient[visit[i] * L + f];
      table[i * L + f] = t == PartialDfaM::kNone ? PartialDfaM::kNone : order[t];
    }
  return PartialDfaM(M.alphabet(), visit.size(), std::move(table));
}

ExportFormat parse_export_format(std::string_view name) {
  if (name == "text") return ExportFormat::Text;
  if (name == "dot") return ExportFormat::Dot;
  if (name == "json") return ExportFormat::Json;
  fail(Errc::UnsupportedFormat, "unsupported format '" + std::string(name) + "'");
}

namespace {

nlohmann::ordered_json alphabet_json(const Alphabet& S) {
  auto arr = nlohmann::ordered_json::array();
  for (LetterIndex i = 0; i < S.size(); ++i)
    arr.push_back({{"name", S.name(i)},
                   {"a", S[i].a.to_string()},
                   {"b", S[i].b.to_string()}});
  return arr;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_automaton(const AutomatonN& N, ExportFormat format,
                             ExportOptions opts) {
  const FqCtx& F = N.alphabet().ctx();
  const auto& S = N.alphabet();
  std::vector<bool> keep(N.num_states(), true);
  if (opts.trim) keep = N.reachable();
  std::ostringstream out;
  switch (format) {
    case ExportFormat::Text: {
      out << "interim automaton: " << N.num_states() << " states, "
          << S.size() << " letters\n";
      for (StateId s = 0; s < N.num_states(); ++s) {
        if (!keep[s]) continue;
        out << N.state(s).to_string(F) << (N.accepting(s) ? " accepting" : "")
            << ":";
        for (LetterIndex f = 0; f < S.size(); ++f)
          out << ' ' << S.name(f) << "->" << N.state(N.next(s, f)).to_string(F);
        out << '\n';
      }
      break;
    }
    case ExportFormat::Dot: {
      out << "digraph N {\n  rankdir=LR;\n";
      for (StateId s = 0; s < N.num_states(); ++s) {
        if (!keep[s]) continue;
        out << "  n" << s << " [label=" << quoted(N.state(s).to_string(F))
            << ", shape=" << (N.accepting(s) ? "doublecircle" : "circle")
            << "];\n";
      }
      for (StateId s = 0; s < N.num_states(); ++s) {
        if (!keep[s]) continue;
        for (LetterIndex f = 0; f < S.size(); ++f)
          out << "  n" << s << " -> n" << N.next(s, f)
              << " [label=" << quoted(S.name(f)) << "];\n";
      }
      out << "}\n";
      break;
    }
    case ExportFormat::Json: {
      nlohmann::ordered_json j;
      j["kind"] = "interim";
      j["field"] = {{"p", F.p()}, {"k", F.k()}};
      j["alphabet"] = alphabet_json(S);
      auto states = nlohmann::ordered_json::array();
      auto trans = nlohmann::ordered_json::array();
      for (StateId s = 0; s < N.num_states(); ++s) {
        if (!keep[s]) continue;
        states.push_back({{"id", s},
                          {"label", N.state(s).to_string(F)},
                          {"accepting", N.accepting(s)}});
        for (LetterIndex f = 0; f < S.size(); ++f)
          trans.push_back({{"from", s}, {"letter", f}, {"to", N.next(s, f)}});
      }
      j["states"] = std::move(states);
      j["start"] = N.start();
      j["transitions"] = std::move(trans);
      out << j.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

std::string export_automaton(const PartialDfaM& M, ExportFormat format) {
  const auto& S = M.alphabet();
  const FqCtx& F = S.ctx();
  const bool labelled = !M.subsets().empty();
  std::ostringstream out;
  switch (format) {
    case ExportFormat::Text: {
      out << "partial DFA: " << M.num_states() << " states, "
          << M.num_transitions() << " transitions, all accepting\n";
      for (StateId s = 0; s < M.num_states(); ++s) {
        out << m_label(s) << ":";
        for (LetterIndex f = 0; f < S.size(); ++f) {
          const StateId t = M.next(s, f);
          if (t != PartialDfaM::kNone) out << ' ' << S.name(f) << "->" << m_label(t);
        }
        out << '\n';
      }
      break;
    }
    case ExportFormat::Dot: {
      out << "digraph M {\n  rankdir=LR;\n";
      for (StateId s = 0; s < M.num_states(); ++s) {
        out << "  n" << s << " [label=" << quoted(m_label(s))
            << ", shape=doublecircle";
        if (s == M.start()) out << ", penwidth=2";
        if (labelled) out << ", tooltip=" << quoted(M.subsets()[s]);
        out << "];\n";
      }
      for (StateId s = 0; s < M.num_states(); ++s)
        for (LetterIndex f = 0; f < S.size(); ++f) {
          const StateId t = M.next(s, f);
          if (t == PartialDfaM::kNone) continue;
          out << "  n" << s << " -> n" << t << " [label=" << quoted(S.name(f))
              << "];\n";
        }
      out << "}\n";
      break;
    }
    case ExportFormat::Json: {
      nlohmann::ordered_json j;
      j["kind"] = "partial";
      j["field"] = {{"p", F.p()}, {"k", F.k()}};
      j["alphabet"] = alphabet_json(S);
      auto states = nlohmann::ordered_json::array();
      auto trans = nlohmann::ordered_json::array();
      for (StateId s = 0; s < M.num_states(); ++s) {
        nlohmann::ordered_json st = {{"id", s}, {"accepting", true}};
        if (labelled) st["subset"] = M.subsets()[s];
        states.push_back(std::move(st));
        for (LetterIndex f = 0; f < S.size(); ++f) {
          const StateId t = M.next(s, f);
          if (t != PartialDfaM::kNone)
            trans.push_back({{"from", s}, {"letter", f}, {"to", t}});
        }
      }
      j["states"] = std::move(states);
      j["start"] = M.start();
      j["transitions"] = std::move(trans);
      out << j.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

PartialDfaM partial_dfa_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    const auto ctx = FqCtx::make(j.at("field").at("p").get<std::uint64_t>(),
                                 j.at("field").at("k").get<unsigned>());
    std::vector<MonicQuad> letters;
    std::vector<std::string> names;
    for (const auto& l : j.at("alphabet")) {
      letters.push_back({ctx->element(ctx->parse(l.at("a").get<std::string>())),
                         ctx->element(ctx->parse(l.at("b").get<std::string>()))});
      names.push_back(l.value("name", std::string{}));
    }
    if (std::any_of(names.begin(), names.end(),
                    [](const std::string& n) { return n.empty(); }))
      names.clear();
    Alphabet S(ctx, std::move(letters), std::move(names));

    // Ids in the file are arbitrary; the start state becomes 0.
    std::map<std::uint64_t, StateId> ids;
    const std::uint64_t start = j.at("start").get<std::uint64_t>();
    ids[start] = 0;
    std::vector<std::string> subsets;
    bool have_subsets = true;
    for (const auto& st : j.at("states")) {
      const auto id = st.at("id").get<std::uint64_t>();
      if (!st.at("accepting").get<bool>())
        fail(Errc::ParseError, "partial DFA states must all be accepting");
      if (id != start) ids.emplace(id, static_cast<StateId>(ids.size()));
    }
    if (ids.size() != j.at("states").size())
      fail(Errc::ParseError, "start state missing or duplicate state ids");
    subsets.assign(ids.size(), {});
    for (const auto& st : j.at("states")) {
      if (st.contains("subset"))
        subsets[ids.at(st.at("id").get<std::uint64_t>())] =
            st.at("subset").get<std::string>();
      else
        have_subsets = false;
    }
    const std::size_t L = S.size();
    std::vector<StateId> delta(ids.size() * L, PartialDfaM::kNone);
    for (const auto& t : j.at("transitions")) {
      const auto from = ids.at(t.at("from").get<std::uint64_t>());
      const auto to = ids.at(t.at("to").get<std::uint64_t>());
      const auto f = t.at("letter").get<std::size_t>();
      if (f >= L) fail(Errc::ParseError, "transition letter out of range");
      if (delta[from * L + f] != PartialDfaM::kNone)
        fail(Errc::ParseError, "nondeterministic transition");
      delta[from * L + f] = to;
    }
    if (!have_subsets) subsets.clear();
    return PartialDfaM(std::move(S), ids.size(), std::move(delta),
                       std::move(subsets));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("malformed automaton JSON: ") + e.what());
  } catch (const std::out_of_range&) {
    fail(Errc::ParseError, "transition refers to an unknown state");
  }
}

}  // namespace quadcomp
