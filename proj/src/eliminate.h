#ifndef REWLANG_ELIMINATE_H
#define REWLANG_ELIMINATE_H

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ast.h"

namespace rewlang {

struct Eliminated {
  Term term;
  // Canonical decoration, e.g. `3:f(2:g(1:c),2:g(1:c))`.
  std::string decorated;
};

/// [[a]]: every assignment x <- t; E is replaced by E with all occurrences of
/// x sharing t's class. Statement conditionals are distributed and tuple
/// assignments expanded first; loops must already be lowered.
Eliminated eliminate_assignments(const ATerm& a);

/// The aterm as a shared graph on which assignments are eliminated one at a
/// time, in any order. Canonical labels number classes in a left-to-right
/// postorder traversal: variables share by name, integers and 0-ary
/// applications by value, everything else by node identity.
class EliminationGraph {
 public:
  struct Node;
  using Ptr = std::shared_ptr<const Node>;

  explicit EliminationGraph(const ATerm& a);

  /// Assignments in left-to-right order.
  std::size_t assignment_count() const;
  /// Eliminates the k-th assignment (0-based, left-to-right order).
  void eliminate_at(std::size_t k);
  void eliminate_innermost_first();
  /// Eliminates all assignments, choosing uniformly at random each time.
  void eliminate_random(std::uint64_t seed);

  bool done() const { return assignment_count() == 0; }
  /// Plain term; only valid once done().
  Term term() const;
  std::string decorated() const;

 private:
  Ptr root_;
};

}  // namespace rewlang

#endif
