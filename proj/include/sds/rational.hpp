#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sds {

/// Exact rational number. Thin eager wrapper around GMP's mpq_class: gmpxx
/// returns lazy expression objects from its operators, which misbehave under
/// `auto` and in templates, so every operation here collapses to a plain
/// value. Always stored reduced with positive denominator (mpq canonical
/// form). No floating point anywhere.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(int n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "num/den" or "num". Throws std::invalid_argument on junk.
    static Rat parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rat: empty string");
        for (char c : s)
            if (!(c == '/' || c == '-' || c == '+' || (c >= '0' && c <= '9')))
                throw std::invalid_argument("Rat: bad character in '" + s + "'");
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rat: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
        q.canonicalize();
        return Rat(q);
    }

    const mpq_class& raw() const { return v_; }

    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.v_ == 0) throw std::domain_error("Rat: division by zero");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat operator-() const { return Rat(mpq_class(-v_)); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }
    bool operator<(const Rat& o) const { return v_ < o.v_; }
    bool operator<=(const Rat& o) const { return v_ <= o.v_; }
    bool operator>(const Rat& o) const { return v_ > o.v_; }
    bool operator>=(const Rat& o) const { return v_ >= o.v_; }

    int sign() const { return sgn(v_); }

    /// k-th power, k >= 0.
    Rat pow(unsigned k) const {
        mpq_class acc(1), base(v_);
        while (k) {
            if (k & 1u) acc *= base;
            base *= base;
            k >>= 1u;
        }
        return Rat(acc);
    }

    /// Renders as "num/den" (always with denominator, e.g. "0/1", "2/3").
    std::string str() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.str();
    }

private:
    mpq_class v_;
};

inline Rat operator*(long a, const Rat& b) { return Rat(a) * b; }

}  // namespace sds
