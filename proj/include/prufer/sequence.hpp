// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prufer/error.hpp"
#include "prufer/types.hpp"

namespace prufer
{

// Immutable, lazily evaluated sequence indexed by a long. Backed by a closed-form period list,
// an explicit array (optionally followed by a constant tail), or a generator. Generators are
// evaluated on demand; cached() materializes a prefix so long trajectories pay the generator
// cost once. Copies share state and are safe for concurrent reads.
template <typename T>
class Sequence
{
public:
  using Generator = std::function<T(long)>;

  Sequence() : Sequence(constant(T{})) {}

  static Sequence constant(T value, long first = 0)
  {
    return Sequence(first, [value](long) { return value; });
  }

  // values[0] is the element at index `first`; the pattern repeats with period values.size().
  static Sequence periodic(std::vector<T> values, long first = 1)
  {
    if (values.empty())
      fail(Errc::invalid_spec, "periodic sequence needs at least one value");
    auto v = std::make_shared<const std::vector<T>>(std::move(values));
    return Sequence(first, [v, first](long n) {
      const long q = static_cast<long>(v->size());
      long r = (n - first) % q;
      if (r < 0)
        r += q;
      return (*v)[static_cast<std::size_t>(r)];
    });
  }

  // Explicit values starting at `first`. Past the end, `tail` is returned if given; otherwise
  // the access is out of range.
  static Sequence array(std::vector<T> values, long first = 1, std::optional<T> tail = {})
  {
    auto v = std::make_shared<const std::vector<T>>(std::move(values));
    return Sequence(first, [v, first, tail](long n) {
      const auto idx = static_cast<std::size_t>(n - first);
      if (idx < v->size())
        return (*v)[idx];
      if (tail)
        return *tail;
      fail(Errc::out_of_range, "sequence index " + std::to_string(n) + " past explicit data");
    });
  }

  static Sequence generated(Generator g, long first = 0) { return Sequence(first, std::move(g)); }

  T operator()(long n) const
  {
    if (n < first_)
      fail(Errc::out_of_range,
           "sequence index " + std::to_string(n) + " below first index " + std::to_string(first_));
    if (cache_)
    {
      const auto idx = static_cast<std::size_t>(n - first_);
      if (idx < cache_->size())
        return (*cache_)[idx];
    }
    return gen_(n);
  }

  long first() const { return first_; }

  // Same sequence with indices [first, last] precomputed.
  Sequence cached(long last) const
  {
    Sequence out = *this;
    if (last < first_)
      return out;
    auto values = std::make_shared<std::vector<T>>();
    values->reserve(static_cast<std::size_t>(last - first_ + 1));
    for (long n = first_; n <= last; ++n)
      values->push_back((*this)(n));
    out.cache_ = std::move(values);
    return out;
  }

  Sequence plus(const Sequence &other) const
  {
    auto a = *this, b = other;
    return Sequence(std::max(first_, other.first_), [a, b](long n) { return a(n) + b(n); });
  }

private:
  Sequence(long first, Generator g) : first_(first), gen_(std::move(g)) {}

  long first_ = 0;
  Generator gen_;
  std::shared_ptr<const std::vector<T>> cache_;
};

using RealSequence = Sequence<double>;
using ComplexSequence = Sequence<cplx>;

}  // namespace prufer
