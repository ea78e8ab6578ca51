#ifndef SEPCERT_COST_HPP
#define SEPCERT_COST_HPP

#include "sepcert/graph.hpp"
#include "sepcert/rational.hpp"

#include <vector>

namespace sepcert {

/// Exact nonnegative rational cost per vertex. Sums are exact; no floating
/// point touches any cost comparison anywhere in the library.
class CostAssignment {
  public:
    CostAssignment() = default;

    explicit CostAssignment(std::vector<Rational> costs) : costs_(std::move(costs)) {
        for (const auto& c : costs_) require(c >= 0, "negative vertex cost");
    }

    static CostAssignment uniform(int n, const Rational& value = Rational(1)) {
        require(value >= 0, "negative vertex cost");
        return CostAssignment(std::vector<Rational>(n, value));
    }

    int size() const { return static_cast<int>(costs_.size()); }

    const Rational& at(Vertex v) const { return costs_.at(v); }

    Rational total() const {
        Rational t = 0;
        for (const auto& c : costs_) t += c;
        return t;
    }

    Rational sum(const VertexSet& s) const {
        Rational t = 0;
        for (Vertex v : s) t += costs_.at(v);
        return t;
    }

    /// Restriction to an induced subgraph's local indexing.
    CostAssignment restrict_to(const std::vector<Vertex>& to_original) const {
        std::vector<Rational> sub;
        sub.reserve(to_original.size());
        for (Vertex v : to_original) sub.push_back(costs_.at(v));
        return CostAssignment(std::move(sub));
    }

    const std::vector<Rational>& values() const { return costs_; }

  private:
    std::vector<Rational> costs_;
};

}  // namespace sepcert

#endif
