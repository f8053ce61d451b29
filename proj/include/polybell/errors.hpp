#pragma once

#include <stdexcept>
#include <string>

namespace polybell {

// Composing into a series with a nonzero constant term would need
// infinitely many terms of the outer sequence.
struct nonzero_constant_term : std::invalid_argument {
    nonzero_constant_term()
        : std::invalid_argument("composition requires an inner series with zero constant term") {}
};

struct order_exceeded : std::out_of_range {
    order_exceeded(int n, int order)
        : std::out_of_range("coefficient index " + std::to_string(n) +
                            " outside series order " + std::to_string(order)) {}
};

struct negative_index : std::invalid_argument {
    explicit negative_index(const std::string& what) : std::invalid_argument(what) {}
};

struct index_out_of_triangle : std::out_of_range {
    index_out_of_triangle(int n, int k)
        : std::out_of_range("(n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                            ") lies outside the triangle 0 <= k <= n") {}
};

struct unknown_identity : std::invalid_argument {
    explicit unknown_identity(const std::string& id)
        : std::invalid_argument("unknown identity: " + id) {}
};

struct grid_mismatch : std::invalid_argument {
    explicit grid_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace polybell
