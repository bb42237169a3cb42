#pragma once

// Truncated multivariate Taylor arithmetic in the four jet variables
// (y1, y2, z, mu). Evaluating a templated vector field on Taylor<Order>
// arguments yields all of its partial derivatives up to total order Order
// without finite differences. Used for exact jets (Order 3) and exact
// Jacobians along trajectories (Order 1).

#include <array>
#include <cmath>
#include <cstddef>

namespace hybridhopf {

inline constexpr int kJetVariables = 4;
using Exponents = std::array<int, kJetVariables>;

constexpr int total_degree(const Exponents& e) { return e[0] + e[1] + e[2] + e[3]; }

constexpr double factorial_weight(const Exponents& e) {
    double w = 1.0;
    for (int k : e) {
        for (int i = 2; i <= k; ++i) w *= i;
    }
    return w;
}

namespace detail {

constexpr int binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

constexpr int ipow(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

template <int Order>
struct MonomialTable {
    static constexpr int size = binomial(Order + kJetVariables, kJetVariables);
    static constexpr int side = Order + 1;
    static constexpr int dense = ipow(side, kJetVariables);

    struct Product {
        int lhs;
        int rhs;
        int out;
    };

    static constexpr int dense_index(const Exponents& e) {
        return ((e[0] * side + e[1]) * side + e[2]) * side + e[3];
    }

    // Graded order: constant first, then the four linear monomials in
    // variable order, then higher degrees.
    static constexpr std::array<Exponents, size> make_exponents() {
        std::array<Exponents, size> out{};
        int n = 0;
        for (int d = 0; d <= Order; ++d) {
            for (int a = d; a >= 0; --a) {
                for (int b = d - a; b >= 0; --b) {
                    for (int c = d - a - b; c >= 0; --c) {
                        out[n++] = Exponents{a, b, c, d - a - b - c};
                    }
                }
            }
        }
        return out;
    }

    static constexpr std::array<Exponents, size> exponents = make_exponents();

    static constexpr std::array<int, dense> make_lookup() {
        std::array<int, dense> lookup{};
        for (auto& v : lookup) v = -1;
        for (int i = 0; i < size; ++i) lookup[dense_index(exponents[i])] = i;
        return lookup;
    }

    static constexpr std::array<int, dense> lookup = make_lookup();

    static constexpr int count_products() {
        int n = 0;
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j)
                if (total_degree(exponents[i]) + total_degree(exponents[j]) <= Order) ++n;
        return n;
    }

    static constexpr int product_count = count_products();

    static constexpr std::array<Product, product_count> make_products() {
        std::array<Product, product_count> out{};
        int n = 0;
        for (int i = 0; i < size; ++i) {
            for (int j = 0; j < size; ++j) {
                if (total_degree(exponents[i]) + total_degree(exponents[j]) > Order) continue;
                Exponents sum{};
                for (int v = 0; v < kJetVariables; ++v) sum[v] = exponents[i][v] + exponents[j][v];
                out[n++] = Product{i, j, lookup[dense_index(sum)]};
            }
        }
        return out;
    }

    static constexpr std::array<Product, product_count> products = make_products();

    static constexpr int index_of(const Exponents& e) {
        for (int k : e)
            if (k < 0) return -1;
        if (total_degree(e) > Order) return -1;
        return lookup[dense_index(e)];
    }
};

} // namespace detail

template <int Order>
class Taylor {
public:
    using Table = detail::MonomialTable<Order>;
    static constexpr int kSize = Table::size;

    Taylor() = default;
    Taylor(double constant) { c_[0] = constant; } // NOLINT: implicit by design of mixed arithmetic

    /// value + t_var, i.e. an independent variable expanded about value.
    static Taylor variable(int var, double value) {
        Taylor t(value);
        t.c_[1 + var] = 1.0;
        return t;
    }

    [[nodiscard]] double value() const { return c_[0]; }

    [[nodiscard]] double coefficient(const Exponents& e) const {
        const int i = Table::index_of(e);
        return i < 0 ? 0.0 : c_[static_cast<std::size_t>(i)];
    }

    /// Partial derivative d^e of the represented function at the expansion point.
    [[nodiscard]] double derivative(const Exponents& e) const { return coefficient(e) * factorial_weight(e); }

    [[nodiscard]] double& operator[](std::size_t i) { return c_[i]; }
    [[nodiscard]] double operator[](std::size_t i) const { return c_[i]; }

    [[nodiscard]] bool finite() const {
        for (double v : c_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    Taylor& operator+=(const Taylor& o) {
        for (int i = 0; i < kSize; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Taylor& operator-=(const Taylor& o) {
        for (int i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Taylor& operator*=(const Taylor& o) { return *this = *this * o; }
    Taylor& operator/=(const Taylor& o) { return *this = *this / o; }

    friend Taylor operator-(Taylor a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
    friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }

    friend Taylor operator*(const Taylor& a, const Taylor& b) {
        Taylor r;
        for (const auto& p : Table::products) r.c_[p.out] += a.c_[p.lhs] * b.c_[p.rhs];
        return r;
    }

    /// 1/(a0 + h) = (1/a0) * sum_k (-h/a0)^k, truncated at Order.
    friend Taylor reciprocal(const Taylor& a) {
        const double a0 = a.c_[0];
        Taylor h = a;
        h.c_[0] = 0.0;
        const Taylor ratio = h * Taylor(-1.0 / a0);
        Taylor term(1.0);
        Taylor sum(1.0);
        for (int k = 1; k <= Order; ++k) {
            term = term * ratio;
            sum += term;
        }
        return sum * Taylor(1.0 / a0);
    }

    friend Taylor operator/(const Taylor& a, const Taylor& b) { return a * reciprocal(b); }

    friend Taylor pow(const Taylor& a, int n) {
        Taylor r(1.0);
        for (int i = 0; i < n; ++i) r = r * a;
        return r;
    }

private:
    std::array<double, kSize> c_{};
};

inline double pow(double a, int n) { return std::pow(a, n); }

inline bool is_finite_value(double v) { return std::isfinite(v); }
template <int Order>
bool is_finite_value(const Taylor<Order>& v) {
    return v.finite();
}

} // namespace hybridhopf
