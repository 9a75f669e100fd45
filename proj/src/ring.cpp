#include "cluster/ring.hpp"

#include <cctype>
#include <sstream>

namespace cluster {

// ---------------- ScalarPoly ----------------

ScalarPoly ScalarPoly::monomial(const Integer& c, int power) {
    ScalarPoly p;
    if (c != 0) p.terms_[power] = c;
    return p;
}

bool ScalarPoly::is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }

Integer ScalarPoly::coefficient(int power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? Integer(0) : it->second;
}

std::optional<int> ScalarPoly::as_v_power() const {
    if (terms_.size() == 1 && terms_.begin()->second == 1) return terms_.begin()->first;
    return std::nullopt;
}

std::optional<int> ScalarPoly::single_term_power() const {
    if (terms_.size() == 1) return terms_.begin()->first;
    return std::nullopt;
}

void ScalarPoly::add_term(int power, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(power, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ScalarPoly ScalarPoly::shifted(int power) const {
    if (power == 0) return *this;
    ScalarPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), k + power, c);
    return out;
}

ScalarPoly ScalarPoly::bar() const {
    ScalarPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(-k, c);
    return out;
}

Integer ScalarPoly::at_one() const {
    Integer s = 0;
    for (const auto& [k, c] : terms_) s += c;
    return s;
}

std::optional<ScalarPoly> ScalarPoly::divide_exact(const ScalarPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero scalar");
    if (is_zero()) return ScalarPoly();
    // Long division from the top power; the quotient's powers are bounded
    // below by min_power() - d.min_power().
    ScalarPoly rem = *this;
    ScalarPoly q;
    const int d_top = d.max_power();
    const Integer& d_lead = d.terms_.rbegin()->second;
    const int floor_power = min_power() - d.min_power();
    while (!rem.is_zero()) {
        int shift = rem.max_power() - d_top;
        if (shift < floor_power) return std::nullopt;
        const Integer& lead = rem.terms_.rbegin()->second;
        if (!mpz_divisible_p(lead.get_mpz_t(), d_lead.get_mpz_t())) return std::nullopt;
        Integer c = lead / d_lead;
        q.add_term(shift, c);
        for (const auto& [k, dc] : d.terms_) rem.add_term(k + shift, -c * dc);
    }
    return q;
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

ScalarPoly& ScalarPoly::operator-=(const ScalarPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
    ScalarPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
    return out;
}

ScalarPoly ScalarPoly::operator-() const {
    ScalarPoly out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
}

std::string ScalarPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        std::string mono = k == 0 ? "" : (k == 1 ? "v" : "v^" + std::to_string(k));
        std::string term;
        if (mono.empty())
            term = c.get_str();
        else if (c == 1)
            term = mono;
        else if (c == -1)
            term = "-" + mono;
        else
            term = c.get_str() + "*" + mono;
        if (!first && term[0] != '-') out += '+';
        out += term;
        first = false;
    }
    return out;
}

// ---------------- Exponent ----------------

bool Exponent::is_zero() const {
    for (int x : e_)
        if (x != 0) return false;
    return true;
}

Exponent& Exponent::operator+=(const Exponent& o) {
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

Exponent& Exponent::operator-=(const Exponent& o) {
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

Exponent Exponent::operator-() const {
    Exponent out = *this;
    for (auto& x : out.e_) x = -x;
    return out;
}

std::string Exponent::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e_[i]);
    }
    return s + "]";
}

// ---------------- Frame ----------------

std::vector<std::size_t> Frame::unfrozen_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < unfrozen.size(); ++i)
        if (unfrozen[i]) out.push_back(i);
    return out;
}

long long Frame::pairing(const Exponent& a, const Exponent& b) const {
    if (!lambda) return 0;
    const IntMatrix& l = *lambda;
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        long long row = 0;
        for (std::size_t j = 0; j < b.size(); ++j) row += l(i, j) * b[j];
        s += a[i] * row;
    }
    return s;
}

FramePtr make_frame(std::vector<std::string> vertices, std::vector<bool> unfrozen, std::vector<int> d,
                    std::optional<IntMatrix> lambda) {
    const std::size_t n = vertices.size();
    if (unfrozen.size() != n) throw std::invalid_argument("unfrozen mask length differs from vertex count");
    if (d.size() != n) throw std::invalid_argument("skew-symmetrizer length differs from vertex count");
    for (std::size_t i = 0; i < n; ++i)
        if (d[i] <= 0) throw std::invalid_argument("skew-symmetrizer entries must be positive");
    if (lambda) {
        if (lambda->rows() != n || lambda->cols() != n) throw std::invalid_argument("lambda has wrong shape");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((*lambda)(i, j) != -(*lambda)(j, i)) throw std::invalid_argument("lambda is not skew-symmetric");
    }
    return std::make_shared<const Frame>(Frame{std::move(vertices), std::move(unfrozen), std::move(d), std::move(lambda)});
}

FramePtr classical_frame(const FramePtr& frame) {
    if (!frame->lambda) return frame;
    return make_frame(frame->vertices, frame->unfrozen, frame->d, std::nullopt);
}

bool same_frame(const FramePtr& a, const FramePtr& b) { return a == b || (a && b && *a == *b); }

// ---------------- TorusElement ----------------

TorusElement TorusElement::monomial(FramePtr frame, const Exponent& m, const ScalarPoly& c) {
    if (m.size() != frame->size()) throw std::invalid_argument("exponent length differs from frame size");
    TorusElement t(std::move(frame));
    t.add_term(m, c);
    return t;
}

TorusElement TorusElement::constant(FramePtr frame, const ScalarPoly& c) {
    Exponent zero(frame->size());
    return monomial(std::move(frame), zero, c);
}

ScalarPoly TorusElement::coefficient(const Exponent& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ScalarPoly() : it->second;
}

const Exponent& TorusElement::leading_exponent() const {
    if (terms_.empty()) throw Error("zero element has no leading term");
    return terms_.rbegin()->first;
}

const ScalarPoly& TorusElement::leading_coefficient() const {
    if (terms_.empty()) throw Error("zero element has no leading term");
    return terms_.rbegin()->second;
}

void TorusElement::add_term(const Exponent& m, const ScalarPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void TorusElement::check_same_frame(const TorusElement& o) const {
    if (!same_frame(frame_, o.frame_)) throw FrameMismatch();
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
    if (!frame_) frame_ = o.frame_;
    check_same_frame(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
    if (!frame_) frame_ = o.frame_;
    check_same_frame(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

TorusElement TorusElement::operator-() const {
    TorusElement out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

TorusElement operator*(const ScalarPoly& s, const TorusElement& a) {
    TorusElement out(a.frame_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
}

bool operator==(const TorusElement& a, const TorusElement& b) {
    return a.terms_ == b.terms_ && (a.terms_.empty() || same_frame(a.frame_, b.frame_));
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
    a.check_same_frame(b);
    TorusElement out(a.frame_);
    const Frame& f = *a.frame_;
    if (!f.lambda) {
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma + mb, ca * cb);
        return out;
    }
    // Lambda(ma, mb) = ma . (Lambda mb); precompute Lambda mb per term of b.
    const IntMatrix& l = *f.lambda;
    const std::size_t n = f.size();
    std::vector<std::vector<long long>> lb;
    lb.reserve(b.terms_.size());
    for (const auto& [mb, cb] : b.terms_) {
        std::vector<long long> v(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v[i] += l(i, j) * mb[j];
        lb.push_back(std::move(v));
    }
    for (const auto& [ma, ca] : a.terms_) {
        std::size_t idx = 0;
        for (const auto& [mb, cb] : b.terms_) {
            long long w = 0;
            for (std::size_t i = 0; i < n; ++i) w += ma[i] * lb[idx][i];
            out.add_term(ma + mb, (ca * cb).shifted(static_cast<int>(w)));
            ++idx;
        }
    }
    return out;
}

TorusElement twisted_mul(const TorusElement& a, const TorusElement& b) { return a * b; }

TorusElement power(const TorusElement& a, unsigned k) {
    TorusElement out = TorusElement::constant(a.frame(), 1);
    for (unsigned i = 0; i < k; ++i) out = out * a;
    return out;
}

TorusElement bar(const TorusElement& a) {
    TorusElement out(a.frame());
    for (const auto& [m, c] : a.terms()) out.add_term(m, c.bar());
    return out;
}

TorusElement pointed_normalize(const TorusElement& a, const Exponent& leading) {
    auto c = a.coefficient(leading);
    if (c.is_zero()) throw NotPointed("leading exponent " + leading.to_string() + " absent");
    auto k = c.as_v_power();
    if (!k) throw NotPointed("coefficient at " + leading.to_string() + " is " + c.to_string() + ", not a power of v");
    if (*k == 0) return a;
    return ScalarPoly::v_power(-*k) * a;
}

TorusElement exact_divide(const TorusElement& numerator, const TorusElement& divisor, Side side) {
    if (divisor.is_zero()) throw Error("division by zero element");
    if (!same_frame(numerator.frame(), divisor.frame()) && !numerator.is_zero()) throw FrameMismatch();
    const FramePtr& frame = divisor.frame();
    TorusElement quotient(frame);
    if (numerator.is_zero()) return quotient;

    const Exponent& lead = divisor.leading_exponent();
    const ScalarPoly& lead_c = divisor.leading_coefficient();
    // Every quotient exponent is at least min(numerator) - min(divisor) in the term order.
    const Exponent floor = numerator.terms().begin()->first - divisor.terms().begin()->first;

    TorusElement rem = numerator;
    while (!rem.is_zero()) {
        Exponent a = rem.leading_exponent() - lead;
        if (a < floor)
            throw LaurentViolation("nonzero remainder in exact division: " + render(rem));
        long long twist = side == Side::right ? frame->pairing(a, lead) : frame->pairing(lead, a);
        auto c = rem.leading_coefficient().shifted(static_cast<int>(-twist)).divide_exact(lead_c);
        if (!c) throw LaurentViolation("leading coefficient not divisible in exact division: " + render(rem));
        TorusElement term = TorusElement::monomial(frame, a, *c);
        quotient.add_term(a, *c);
        rem -= side == Side::right ? term * divisor : divisor * term;
    }
    return quotient;
}

TorusElement specialize_classical(const TorusElement& a) {
    TorusElement out(classical_frame(a.frame()));
    for (const auto& [m, c] : a.terms()) out.add_term(m, ScalarPoly(c.at_one()));
    return out;
}

std::string render(const TorusElement& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono = "X" + m.to_string();
        std::string term;
        if (c.is_one())
            term = mono;
        else if (c == ScalarPoly(-1))
            term = "-" + mono;
        else if (c.single_term_power())
            term = c.to_string() + "*" + mono;
        else
            term = "(" + c.to_string() + ")*" + mono;
        if (first)
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
        first = false;
    }
    return out;
}

// ---------------- parsing ----------------

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip();
        return pos_ >= s_.size();
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    Integer integer() {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) fail("expected integer");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }
    bool at_digit() {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("element text, column " + std::to_string(pos_ + 1) + ": " + what);
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

// [int] ['*'] ['v' ['^' int]]. Sets `star` when a '*' following a bare
// integer was consumed (it then belongs to the enclosing term).
ScalarPoly parse_scalar_monomial(Cursor& cur, bool* star = nullptr) {
    Integer c = 1;
    bool have = false;
    if (cur.at_digit()) {
        c = cur.integer();
        have = true;
        if (cur.accept('*') && cur.peek() != 'v') {
            if (!star) cur.fail("expected 'v' after '*'");
            *star = true;
            return ScalarPoly(c);
        }
    }
    if (cur.peek() == 'v') {
        cur.accept('v');
        int k = 1;
        if (cur.accept('^')) k = static_cast<int>(cur.integer().get_si());
        return ScalarPoly::monomial(c, k);
    }
    if (!have) cur.fail("expected scalar");
    return ScalarPoly(c);
}

ScalarPoly parse_scalar_sum(Cursor& cur) {
    ScalarPoly out;
    bool first = true;
    while (true) {
        int sign = 1;
        if (cur.accept('-'))
            sign = -1;
        else if (!first && !cur.accept('+'))
            break;
        else if (first)
            cur.accept('+');
        ScalarPoly t = parse_scalar_monomial(cur);
        out += sign > 0 ? t : -t;
        first = false;
        char c = cur.peek();
        if (c != '+' && c != '-') break;
    }
    return out;
}

Exponent parse_exponent(Cursor& cur, std::size_t n) {
    cur.expect('[');
    std::vector<int> e;
    if (!cur.accept(']')) {
        do {
            e.push_back(static_cast<int>(cur.integer().get_si()));
        } while (cur.accept(','));
        cur.expect(']');
    }
    if (e.size() != n) cur.fail("exponent has " + std::to_string(e.size()) + " entries, frame has " + std::to_string(n));
    return Exponent(std::move(e));
}

}  // namespace

TorusElement parse_element(std::string_view text, const FramePtr& frame) {
    Cursor cur(text);
    TorusElement out(frame);
    if (cur.peek() == '0') {
        cur.accept('0');
        if (!cur.done()) cur.fail("trailing input after 0");
        return out;
    }
    bool first = true;
    while (!cur.done()) {
        int sign = 1;
        if (cur.accept('-'))
            sign = -1;
        else if (cur.accept('+'))
            sign = 1;
        else if (!first)
            cur.fail("expected '+' or '-'");
        ScalarPoly coef(1);
        if (cur.accept('(')) {
            coef = parse_scalar_sum(cur);
            cur.expect(')');
            cur.expect('*');
        } else if (cur.peek() != 'X') {
            bool star = false;
            coef = parse_scalar_monomial(cur, &star);
            if (!star) cur.expect('*');
        }
        cur.expect('X');
        Exponent m = parse_exponent(cur, frame->size());
        out.add_term(m, sign > 0 ? coef : -coef);
        first = false;
    }
    if (first) cur.fail("empty element");
    return out;
}

}  // namespace cluster
