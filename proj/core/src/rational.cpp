#include "cartansuper/rational.hpp"

#include <limits>
#include <stdexcept>

namespace cartansuper {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    u128 mag = abs128(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
}

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

bool fits_int64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    assign_from(static_cast<i128>(num), static_cast<i128>(den));
}

Rational::Rational(const mpq_class& q) { assign_from(q); }

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
    if (this != &other) {
        num_ = other.num_;
        den_ = other.den_;
        big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
}

void Rational::assign_from(i128 num, i128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    u128 g = gcd128(abs128(num), static_cast<u128>(den));
    if (g > 1) {
        num /= static_cast<i128>(g);
        den /= static_cast<i128>(g);
    }
    if (num == 0) {
        den = 1;
    }
    if (num <= kMax64 && num >= -kMax64 && den <= kMax64) {
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
        big_.reset();
        return;
    }
    mpq_class q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::assign_from(const mpq_class& q_in) {
    mpq_class q(q_in);
    q.canonicalize();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (fits_int64(n) && fits_int64(d) && n.get_si() != std::numeric_limits<long>::min()) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
        return;
    }
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
}

mpq_class Rational::to_mpq() const {
    if (big_) {
        return *big_;
    }
    return mpq_class(to_mpz(num_), to_mpz(den_));
}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("Rational::parse: empty string");
    }
    std::string s(text);
    auto slash = s.find('/');
    auto check_digits = [&](const std::string& part) {
        std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (start >= part.size()) {
            throw std::invalid_argument("Rational::parse: malformed '" + s + "'");
        }
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                throw std::invalid_argument("Rational::parse: malformed '" + s + "'");
            }
        }
    };
    std::string num_part = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den_part = slash == std::string::npos ? "1" : s.substr(slash + 1);
    check_digits(num_part);
    check_digits(den_part);
    if (num_part[0] == '+') num_part.erase(0, 1);
    if (den_part[0] == '+') den_part.erase(0, 1);
    mpz_class n(num_part, 10);
    mpz_class d(den_part, 10);
    if (d == 0) {
        throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
    }
    return Rational(mpq_class(n, d));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) {
        return sgn(*big_);
    }
    return (num_ > 0) - (num_ < 0);
}

std::string Rational::numerator_str() const {
    return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
    return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::string Rational::str() const {
    if (is_integer()) {
        return numerator_str();
    }
    return numerator_str() + "/" + denominator_str();
}

std::string Rational::fraction_str() const { return numerator_str() + "/" + denominator_str(); }

bool Rational::to_int64(std::int64_t& out) const {
    if (big_ || den_ != 1) {
        return false;
    }
    out = num_;
    return true;
}

Rational Rational::operator-() const {
    Rational r(*this);
    if (r.big_) {
        *r.big_ = -*r.big_;
    } else if (r.num_ == std::numeric_limits<std::int64_t>::min()) {
        r.assign_from(-static_cast<__int128>(r.num_), static_cast<__int128>(r.den_));
    } else {
        r.num_ = -r.num_;
    }
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (rhs.num_ == 0) return *this;
        if (den_ == 1 && rhs.den_ == 1) {
            assign_from(static_cast<i128>(num_) + rhs.num_, 1);
            return *this;
        }
        i128 n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
        i128 d = static_cast<i128>(den_) * rhs.den_;
        assign_from(n, d);
        return *this;
    }
    assign_from(to_mpq() + rhs.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (rhs.num_ == 0) return *this;
        if (den_ == 1 && rhs.den_ == 1) {
            assign_from(static_cast<i128>(num_) - rhs.num_, 1);
            return *this;
        }
        i128 n = static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_;
        i128 d = static_cast<i128>(den_) * rhs.den_;
        assign_from(n, d);
        return *this;
    }
    assign_from(to_mpq() - rhs.to_mpq());
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        assign_from(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
        return *this;
    }
    assign_from(to_mpq() * rhs.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    if (!big_ && !rhs.big_) {
        assign_from(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
        return *this;
    }
    assign_from(to_mpq() / rhs.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) {
        // Canonical form guarantees a demoted value never equals a big one.
        return false;
    }
    return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 lhs = static_cast<i128>(a.num_) * b.den_;
        i128 rhs = static_cast<i128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

}  // namespace cartansuper
