#pragma once

// Two-generator presentations of the twisted torus knots T^m_{3,3k+2}, their peripheral
// words, word evaluation in SL2(C), and the Alexander polynomial by Fox calculus.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "elocus/core_algebra.hpp"

namespace elocus {

// (3, 3k+2) torus knot with m full twists on two strands. k = m = 1 is the (-2,3,7) pretzel.
class TwistedTorusKnot {
public:
    TwistedTorusKnot(int k, int m);

    int k() const { return k_; }
    int m() const { return m_; }

    // c = 3(3k+2) + 4m, the meridian exponent in lambda = mu^{-c} sigma.
    int homological_exponent() const { return 3 * (3 * k_ + 2) + 4 * m_; }

    // Abelianization images in powers of the meridian.
    int a_degree() const { return 3 * k_ + 2; }
    int b_degree() const { return 3; }

    friend bool operator==(const TwistedTorusKnot&, const TwistedTorusKnot&) = default;

private:
    int k_;
    int m_;
};

enum class Generator : std::uint8_t { A, B };

struct Letter {
    Generator gen;
    int exp;
    friend bool operator==(const Letter&, const Letter&) = default;
};

// Freely reduced word in a, b. Adjacent letters always carry distinct generators.
class GroupWord {
public:
    GroupWord() = default;
    GroupWord(std::initializer_list<Letter> letters);

    const std::vector<Letter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }

    GroupWord& append(Generator g, int exp);
    GroupWord& append(const GroupWord& w);
    GroupWord power(int n) const;
    GroupWord inverse() const;

    // Exponent sum under a -> a_weight, b -> b_weight.
    long exponent_sum(long a_weight, long b_weight) const;

    std::string to_string() const;

    friend bool operator==(const GroupWord&, const GroupWord&) = default;

private:
    std::vector<Letter> letters_;
};

GroupWord operator*(GroupWord x, const GroupWord& y);

struct Relation {
    GroupWord lhs;
    GroupWord rhs;
};

struct PeripheralSystem {
    GroupWord meridian;
    GroupWord sigma;
    // lambda = meridian^{-c} sigma; kept as this pair rather than a single word.
    int homological_exponent{0};
};

// a^2 (b^{-k} a)^m a = b^{2k+1} (b^{-k} a)^m b^{k+1}
Relation relator(const TwistedTorusKnot& knot);

// mu = a^{-1} b^{k+1}, sigma = a (b^{-k} a)^m a (b^{-k} a)^m a
PeripheralSystem peripheral(const TwistedTorusKnot& knot);

Mat2C evaluate_word(const GroupWord& w, const Mat2C& a, const Mat2C& b);

// Integer Laurent polynomial in x with exact coefficients.
class LaurentPoly {
public:
    using Coeff = std::int64_t;

    LaurentPoly() = default;
    explicit LaurentPoly(std::map<int, Coeff> terms);
    static LaurentPoly monomial(int exponent, Coeff c = 1);

    const std::map<int, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Coeff coefficient(int exponent) const;
    int min_degree() const;
    int max_degree() const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly shifted(int by) const;
    LaurentPoly negated() const;

    Coeff at_one() const;
    Complex evaluate(Complex x) const;
    bool is_symmetric() const;  // coeff(i) == coeff(-i)

    // Exact division; throws InvariantViolation when the remainder is nonzero.
    LaurentPoly divided_exactly_by(const LaurentPoly& divisor) const;

    // Human-readable form, e.g. "x^-5 - x^-4 + 1 - x".
    std::string to_string() const;

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    void trim();
    std::map<int, Coeff> terms_;
};

LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y);
LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y);
LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);

// Fox derivative d(word)/d(gen) pushed through the abelianization a -> x^a_weight,
// b -> x^b_weight.
LaurentPoly abelianized_fox_derivative(const GroupWord& word, Generator gen, int a_weight,
                                       int b_weight);

// Alexander polynomial of <a, b | lhs = rhs> with the given abelianization weights,
// symmetrized so that coeff(i) = coeff(-i) and normalized to value 1 at x = 1.
LaurentPoly alexander_from_relation(const Relation& rel, int a_weight, int b_weight);

LaurentPoly alexander(const TwistedTorusKnot& knot);

}  // namespace elocus
