#include "elocus/knot.hpp"

#include <cmath>
#include <sstream>

#include "elocus/errors.hpp"

namespace elocus {

TwistedTorusKnot::TwistedTorusKnot(int k, int m) : k_(k), m_(m) {
    if (k < 1 || m < 1) {
        throw DomainError("twisted torus knot needs k >= 1 and m >= 1 (got k=" +
                          std::to_string(k) + ", m=" + std::to_string(m) + ")");
    }
}

GroupWord::GroupWord(std::initializer_list<Letter> letters) {
    for (const Letter& l : letters) append(l.gen, l.exp);
}

GroupWord& GroupWord::append(Generator g, int exp) {
    if (exp == 0) return *this;
    if (!letters_.empty() && letters_.back().gen == g) {
        letters_.back().exp += exp;
        if (letters_.back().exp == 0) letters_.pop_back();
    } else {
        letters_.push_back({g, exp});
    }
    return *this;
}

GroupWord& GroupWord::append(const GroupWord& w) {
    for (const Letter& l : w.letters_) append(l.gen, l.exp);
    return *this;
}

GroupWord GroupWord::power(int n) const {
    GroupWord base = n < 0 ? inverse() : *this;
    GroupWord out;
    for (int i = 0; i < std::abs(n); ++i) out.append(base);
    return out;
}

GroupWord GroupWord::inverse() const {
    GroupWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.append(it->gen, -it->exp);
    return out;
}

long GroupWord::exponent_sum(long a_weight, long b_weight) const {
    long total = 0;
    for (const Letter& l : letters_) total += l.exp * (l.gen == Generator::A ? a_weight : b_weight);
    return total;
}

std::string GroupWord::to_string() const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    for (const Letter& l : letters_) {
        os << (l.gen == Generator::A ? 'a' : 'b');
        if (l.exp != 1) os << '^' << l.exp;
    }
    return os.str();
}

GroupWord operator*(GroupWord x, const GroupWord& y) { return x.append(y); }

namespace {

GroupWord gen(Generator g, int exp) { return GroupWord{{g, exp}}; }

// b^{-k} a
GroupWord twist_block(int k) { return gen(Generator::B, -k) * gen(Generator::A, 1); }

}  // namespace

Relation relator(const TwistedTorusKnot& knot) {
    const int k = knot.k();
    const GroupWord block = twist_block(k).power(knot.m());
    return {gen(Generator::A, 2) * block * gen(Generator::A, 1),
            gen(Generator::B, 2 * k + 1) * block * gen(Generator::B, k + 1)};
}

PeripheralSystem peripheral(const TwistedTorusKnot& knot) {
    const int k = knot.k();
    const GroupWord block = twist_block(k).power(knot.m());
    const GroupWord a = gen(Generator::A, 1);
    return {gen(Generator::A, -1) * gen(Generator::B, k + 1), a * block * a * block * a,
            knot.homological_exponent()};
}

Mat2C evaluate_word(const GroupWord& w, const Mat2C& a, const Mat2C& b) {
    if (!has_unit_determinant(a) || !has_unit_determinant(b)) {
        throw InvariantViolation("evaluate_word: generator image does not have determinant 1");
    }
    Mat2C out = Mat2C::identity();
    for (const Letter& l : w.letters()) {
        out = out * matrix_power(l.gen == Generator::A ? a : b, l.exp);
    }
    return out;
}

// ---------------------------------------------------------------------------------------

LaurentPoly::LaurentPoly(std::map<int, Coeff> terms) : terms_(std::move(terms)) { trim(); }

LaurentPoly LaurentPoly::monomial(int exponent, Coeff c) { return LaurentPoly({{exponent, c}}); }

void LaurentPoly::trim() {
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

LaurentPoly::Coeff LaurentPoly::coefficient(int exponent) const {
    const auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
}

int LaurentPoly::min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    trim();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] -= c;
    trim();
    return *this;
}

LaurentPoly LaurentPoly::shifted(int by) const {
    std::map<int, Coeff> out;
    for (const auto& [e, c] : terms_) out[e + by] = c;
    return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::negated() const {
    std::map<int, Coeff> out;
    for (const auto& [e, c] : terms_) out[e] = -c;
    return LaurentPoly(std::move(out));
}

LaurentPoly::Coeff LaurentPoly::at_one() const {
    Coeff total = 0;
    for (const auto& [e, c] : terms_) total += c;
    return total;
}

Complex LaurentPoly::evaluate(Complex x) const {
    Complex total = 0.0;
    for (const auto& [e, c] : terms_) total += static_cast<double>(c) * std::pow(x, e);
    return total;
}

bool LaurentPoly::is_symmetric() const {
    for (const auto& [e, c] : terms_) {
        if (coefficient(-e) != c) return false;
    }
    return true;
}

LaurentPoly LaurentPoly::divided_exactly_by(const LaurentPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("LaurentPoly: division by zero polynomial");
    const Coeff lead = divisor.terms_.rbegin()->second;
    const int dmax = divisor.max_degree();
    LaurentPoly rem = *this;
    std::map<int, Coeff> quotient;
    while (!rem.is_zero() && rem.max_degree() - dmax >= min_degree() - divisor.min_degree()) {
        const int e = rem.max_degree();
        const Coeff c = rem.terms_.rbegin()->second;
        if (c % lead != 0) break;
        const int qe = e - dmax;
        quotient[qe] += c / lead;
        rem -= LaurentPoly::monomial(qe, c / lead) * divisor;
    }
    if (!rem.is_zero()) {
        throw InvariantViolation("LaurentPoly: division by " + divisor.to_string() +
                                 " leaves a remainder");
    }
    return LaurentPoly(std::move(quotient));
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const Coeff mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << '*';
        os << 'x';
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
    std::map<int, LaurentPoly::Coeff> out;
    for (const auto& [ex, cx] : x.terms()) {
        for (const auto& [ey, cy] : y.terms()) out[ex + ey] += cx * cy;
    }
    return LaurentPoly(std::move(out));
}

LaurentPoly abelianized_fox_derivative(const GroupWord& word, Generator g, int a_weight,
                                       int b_weight) {
    std::map<int, LaurentPoly::Coeff> out;
    int prefix = 0;
    for (const Letter& l : word.letters()) {
        const int weight = l.gen == Generator::A ? a_weight : b_weight;
        if (l.gen == g) {
            if (l.exp > 0) {
                for (int j = 0; j < l.exp; ++j) out[prefix + j * weight] += 1;
            } else {
                for (int j = 1; j <= -l.exp; ++j) out[prefix - j * weight] -= 1;
            }
        }
        prefix += l.exp * weight;
    }
    return LaurentPoly(std::move(out));
}

LaurentPoly alexander_from_relation(const Relation& rel, int a_weight, int b_weight) {
    const GroupWord word = rel.lhs * rel.rhs.inverse();
    if (word.exponent_sum(a_weight, b_weight) != 0) {
        throw DomainError("alexander: abelianization weights do not kill the relator");
    }
    // Delta * (phi(b) - 1) = phi(dR/da) * (x - 1), up to a unit.
    const LaurentPoly da = abelianized_fox_derivative(word, Generator::A, a_weight, b_weight);
    const LaurentPoly x_minus_one = LaurentPoly({{1, 1}, {0, -1}});
    const LaurentPoly b_minus_one = LaurentPoly({{b_weight, 1}, {0, -1}});
    LaurentPoly delta = (da * x_minus_one).divided_exactly_by(b_minus_one);
    if (delta.is_zero()) throw InvariantViolation("alexander: Fox derivative vanished");

    const int span = delta.max_degree() - delta.min_degree();
    if (span % 2 != 0) throw InvariantViolation("alexander: odd degree span");
    delta = delta.shifted(-delta.min_degree() - span / 2);
    const auto at_one = delta.at_one();
    if (at_one == -1) {
        delta = delta.negated();
    } else if (at_one != 1) {
        throw InvariantViolation("alexander: |Delta(1)| != 1");
    }
    if (!delta.is_symmetric()) throw InvariantViolation("alexander: result is not symmetric");
    return delta;
}

LaurentPoly alexander(const TwistedTorusKnot& knot) {
    return alexander_from_relation(relator(knot), knot.a_degree(), knot.b_degree());
}

}  // namespace elocus
