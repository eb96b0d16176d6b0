#pragma once

#include "nncs/omega/alphabet.hpp"

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace nncs::omega {

/// State of a lazily built automaton.
using Key = boost::container::small_vector<std::uint32_t, 8>;
using KeyView = std::span<const std::uint32_t>;

inline KeyView view(const Key& k) { return KeyView(k.data(), k.size()); }

struct Edge {
  Cube label;
  Key target;
};

/// Successor-function view of an NBA. successors() appends the transitions
/// leaving `state`, each with its label already intersected with `filter`;
/// transitions whose label would become empty on some track are omitted.
class AutomatonImpl {
 public:
  virtual ~AutomatonImpl() = default;
  virtual std::size_t arity() const = 0;
  virtual std::size_t key_size() const = 0;
  virtual Key initial() const = 0;
  virtual bool accepting(KeyView state) const = 0;
  virtual void successors(KeyView state, const Cube& filter, std::vector<Edge>& out) const = 0;
  /// Every SCC is entirely accepting or entirely rejecting.
  virtual bool weak() const { return false; }
};

/// Immutable shared handle.
class Nba {
 public:
  explicit Nba(std::shared_ptr<const AutomatonImpl> impl);

  std::size_t arity() const { return impl_->arity(); }
  const AutomatonImpl& impl() const { return *impl_; }
  const std::shared_ptr<const AutomatonImpl>& ptr() const { return impl_; }

 private:
  std::shared_ptr<const AutomatonImpl> impl_;
};

class ExplorationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default cap on explored states; exceeded exploration throws ExplorationLimit.
inline constexpr std::size_t kDefaultStateLimit = 4'000'000;

/// Explicit automaton with numbered states.
struct ExplicitNba {
  std::size_t arity = 1;
  std::uint32_t initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<std::pair<Cube, std::uint32_t>>> transitions;
  bool weak = false;

  std::size_t size() const { return accepting.size(); }
  std::size_t transition_count() const;
  /// Throws std::invalid_argument on out-of-range states or ragged labels.
  void validate() const;
};

Nba make_nba(ExplicitNba a);
/// Explicit copy of the reachable part.
ExplicitNba materialize(const Nba& a, std::size_t limit = kDefaultStateLimit);
/// Reachable and co-reachable (to an accepting cycle) part, renumbered in
/// breadth-first order. An empty language yields a single rejecting state.
ExplicitNba trim_explicit(const Nba& a, std::size_t limit = kDefaultStateLimit);
Nba trim(const Nba& a, std::size_t limit = kDefaultStateLimit);

/// Accepted lasso, or nullopt when the language is empty.
std::optional<LassoWord> find_accepted(const Nba& a, std::size_t limit = kDefaultStateLimit);
inline bool is_empty(const Nba& a, std::size_t limit = kDefaultStateLimit) { return !find_accepted(a, limit); }

/// Automaton accepting exactly the given lasso word.
Nba lasso_nba(const LassoWord& w);
bool member(const Nba& a, const LassoWord& w);

/// Counts reachable states.
std::size_t state_count(const Nba& a, std::size_t limit = kDefaultStateLimit);

/// Copy of `a` with the label of one transition rewritten on one track:
/// the n-th transition (in state/edge order) whose label on `track` is
/// exactly `from` gets `to` instead. Returns nullopt if there is none.
std::optional<ExplicitNba> corrupt_transition(const ExplicitNba& a, std::size_t track, Mask from, Mask to,
                                              std::size_t n);

}  // namespace nncs::omega
