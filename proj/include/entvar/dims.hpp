#pragma once

#include <stdexcept>
#include <string>

namespace entvar {

/// Subsystem dimensions of the bipartite system, 1 <= m <= n.
class Dims {
public:
    Dims(long m, long n) : m_(m), n_(n) {
        if (m < 1 || m > n) {
            throw std::invalid_argument("invalid dimensions (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                                        "): require 1 <= m <= n");
        }
    }

    long m() const { return m_; }
    long n() const { return n_; }
    /// Laguerre weight exponent n - m.
    long alpha() const { return n_ - m_; }
    long mn() const { return m_ * n_; }

    friend bool operator==(const Dims&, const Dims&) = default;

private:
    long m_;
    long n_;
};

}  // namespace entvar
