#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace ffgraph {

/// Real bivariate polynomial S(b1,b2) = sum c_ij b1^i b2^j with exact
/// partial derivatives. The constant term is required to vanish.
class InvariantPolynomial {
public:
    struct Term {
        int i = 0;
        int j = 0;
        double c = 0.0;
    };

    struct Eval {
        double value = 0.0;
        double s1 = 0.0;  // d/db1
        double s2 = 0.0;  // d/db2
    };

    InvariantPolynomial() = default;

    explicit InvariantPolynomial(std::vector<Term> terms) {
        for (const Term& t : terms) add_term(t.i, t.j, t.c);
    }

    static InvariantPolynomial zero() { return InvariantPolynomial{}; }

    void add_term(int i, int j, double c) {
        if (i < 0 || j < 0) throw std::invalid_argument("negative exponent in invariant polynomial");
        if (i == 0 && j == 0 && c != 0.0)
            throw std::invalid_argument("invariant polynomial must vanish at the critical value");
        if (c == 0.0) return;
        for (Term& t : terms_) {
            if (t.i == i && t.j == j) {
                t.c += c;
                return;
            }
        }
        terms_.push_back({i, j, c});
    }

    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    double eval(double b1, double b2) const {
        double v = 0.0;
        for (const Term& t : terms_) v += t.c * ipow(b1, t.i) * ipow(b2, t.j);
        return v;
    }

    double d1(double b1, double b2) const {
        double v = 0.0;
        for (const Term& t : terms_)
            if (t.i > 0) v += t.c * t.i * ipow(b1, t.i - 1) * ipow(b2, t.j);
        return v;
    }

    double d2(double b1, double b2) const {
        double v = 0.0;
        for (const Term& t : terms_)
            if (t.j > 0) v += t.c * t.j * ipow(b1, t.i) * ipow(b2, t.j - 1);
        return v;
    }

    Eval eval_all(std::complex<double> b) const {
        const double b1 = b.real(), b2 = b.imag();
        return {eval(b1, b2), d1(b1, b2), d2(b1, b2)};
    }

private:
    static double ipow(double x, int n) {
        double r = 1.0;
        for (int k = 0; k < n; ++k) r *= x;
        return r;
    }

    std::vector<Term> terms_;
};

}  // namespace ffgraph
