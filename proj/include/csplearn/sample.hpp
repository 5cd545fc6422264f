#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "csplearn/csp.hpp"
#include "csplearn/error.hpp"

namespace csplearn {

struct LabeledExample {
  std::vector<Sign> instance;
  std::uint8_t label = 0;  // 0 or 1
  bool operator==(const LabeledExample&) const = default;
};

// Sample over the boolean cube: all instances the same length.
struct LabeledSample {
  std::vector<LabeledExample> examples;

  std::size_t size() const { return examples.size(); }
  std::size_t instance_length() const {
    return examples.empty() ? 0 : examples.front().instance.size();
  }
  void validate() const {
    const std::size_t len = instance_length();
    for (const auto& ex : examples) {
      if (ex.instance.size() != len)
        throw MalformedInstanceError("sample instances have mixed lengths");
      if (ex.label > 1) throw MalformedInstanceError("label outside {0,1}");
      for (Sign s : ex.instance)
        if (s != 1 && s != -1)
          throw MalformedInstanceError("instance entry outside {+1,-1}");
    }
  }
  bool operator==(const LabeledSample&) const = default;
};

// Sample whose instances are signed tuples (the learning view of a
// (T,notT)-formula before the cube embedding).
struct TupleSample {
  int n = 0;  // variable count the tuples range over
  int k = 0;  // predicate shape (K, M); tuple arity is k*m
  int m = 0;
  std::vector<std::pair<SignedTuple, std::uint8_t>> examples;

  std::size_t size() const { return examples.size(); }
  bool operator==(const TupleSample&) const = default;
};

}  // namespace csplearn
