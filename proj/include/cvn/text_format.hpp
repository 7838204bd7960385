#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cvn/free_group.hpp"
#include "cvn/graph.hpp"
#include "cvn/outer_space.hpp"

namespace cvn {

/// Input error with the 1-based line it refers to (0 when not tied to one).
/// what() reads "source:line: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message, const std::string& source = "")
      : std::runtime_error(compose(line, message, source)), line_(line), message_(message) {}
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  static std::string compose(int line, const std::string& message, const std::string& source) {
    std::string out = source;
    if (line > 0) out += (out.empty() ? "line " : ":") + std::to_string(line);
    return out.empty() ? message : out + ": " + message;
  }
  int line_;
  std::string message_;
};

/// Named objects of an input document. Blocks:
///
///   graph NAME                 point NAME                  auto NAME
///     vertices 2                 graph NAME | rose N |       rank 2
///     edge 0 1                     theta N                   a -> b
///     ...                        (or vertices/edge lines)    b -> a b
///   end                          basepoint 0                 inverse a -> b A
///                                tree 0 2                    inverse b -> a
///                                act AUTO                  end
///                                lengths 1/2 1/2 | centre
///                              end
///
/// '#' starts a comment. Edge ids follow the order of the edge lines.
/// Without a tree line the breadth-first spanning tree is used, and the
/// marking reads the non-tree edges in id order as a, b, c, ... act lines
/// apply automorphisms to the marking in order.
struct Workspace {
  std::map<std::string, Graph> graphs;
  std::map<std::string, CVPoint> points;
  std::map<std::string, AutoPair> autos;

  /// Lookups that fall back to the built-in names; throw ParseError.
  const CVPoint& point(const std::string& name) const;
  AutoPair automorphism(const std::string& name) const;
  /// A point's simplex, or a built-in simplex.
  MarkedGraph simplex(const std::string& name) const;
};

Workspace parse_workspace(std::string_view text);
/// Reads and parses a file; errors are prefixed with the path.
Workspace load_workspace(const std::string& path);

/// Built-ins: "golden" (a -> b, b -> a b), "identityN", "alpha3" (the
/// order-3 automorphism of the theta graph X_3), "alphaP" for odd primes P.
std::optional<AutoPair> builtin_auto(const std::string& name);
/// Built-ins: "roseN" (identity marking), "thetaN" (tree {e0}).
std::optional<MarkedGraph> builtin_simplex(const std::string& name);

}  // namespace cvn
