#pragma once

#include "ce.hpp"

#include <map>

namespace algco {

/// Sparse univariate polynomial over Q (exponent -> nonzero coefficient).
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& c) { add_term(0, c); }

    static Poly t(unsigned e = 1) {
        Poly p;
        p.add_term(e, Rational(1));
        return p;
    }

    void add_term(unsigned e, const Rational& c) {
        if (c == 0) return;
        auto it = m_c.find(e);
        if (it == m_c.end()) {
            m_c.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) m_c.erase(it);
        }
    }

    bool is_zero() const { return m_c.empty(); }
    bool operator==(const Poly& o) const { return m_c == o.m_c; }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [e, c] : o.m_c) r.add_term(e, c);
        return r;
    }

    Poly operator-(const Poly& o) const {
        Poly r = *this;
        for (const auto& [e, c] : o.m_c) r.add_term(e, -c);
        return r;
    }

    Poly operator*(const Rational& s) const {
        Poly r;
        if (s == 0) return r;
        for (const auto& [e, c] : m_c) r.m_c.emplace(e, c * s);
        return r;
    }

    Poly derivative() const {
        Poly r;
        for (const auto& [e, c] : m_c)
            if (e > 0) r.m_c.emplace(e - 1, c * Rational(e));
        return r;
    }

    /// Antiderivative vanishing at 0 (the primitive used by the homotopy).
    Poly integral() const {
        Poly r;
        for (const auto& [e, c] : m_c) r.m_c.emplace(e + 1, c / Rational(e + 1));
        return r;
    }

    Rational eval(const Rational& x) const {
        Rational v(0);
        for (const auto& [e, c] : m_c) {
            Rational p(1);
            for (unsigned i = 0; i < e; ++i) p *= x;
            v += c * p;
        }
        return v;
    }

    const std::map<unsigned, Rational>& terms() const { return m_c; }

private:
    std::map<unsigned, Rational> m_c;
};

/**
 * Element of the polynomial cylinder complex over a CE complex: a total
 * degree-k form  base(t) + dt ^ eta(t)  with base(t) a Q[t]-combination of
 * degree-k monomials and eta(t) of degree-(k-1) monomials.
 */
struct CylinderForm {
    std::size_t degree = 0;
    std::vector<Poly> base; // dim Omega^k entries
    std::vector<Poly> dt;   // dim Omega^{k-1} entries

    bool is_zero() const {
        for (const auto& p : base)
            if (!p.is_zero()) return false;
        for (const auto& p : dt)
            if (!p.is_zero()) return false;
        return true;
    }
};

/**
 * The cylinder of a CE complex: forms acquire a polynomial parameter t and
 * a dt-component.  Because the underlying geometry of the coefficients is a
 * point, the differential has no horizontal derivative term beyond dt ^ d/dt:
 *
 *   d(p (x) w)      = p' dt ^ w + p (x) dw
 *   d(p dt ^ eta)   = -p dt ^ d eta
 *
 * and the degree can exceed the algebra dimension by one (pure dt part).
 */
class CylinderComplex {
public:
    explicit CylinderComplex(Representation rep) : m_ce(std::move(rep)) {}

    const CEComplex& base_complex() const { return m_ce; }
    std::size_t top() const { return m_ce.top() + 1; }

    std::size_t base_dim(std::size_t k) const {
        return k <= m_ce.top() ? m_ce.dim_at(k) : 0;
    }
    std::size_t dt_dim(std::size_t k) const { return k == 0 ? 0 : base_dim(k - 1); }

    CylinderForm zero(std::size_t k) const {
        return {k, std::vector<Poly>(base_dim(k)), std::vector<Poly>(dt_dim(k))};
    }

    void check_shape(const CylinderForm& f) const {
        if (f.base.size() != base_dim(f.degree) || f.dt.size() != dt_dim(f.degree))
            throw DimensionMismatch("cylinder form: component sizes do not match degree");
    }

    CylinderForm differential(const CylinderForm& f) const {
        check_shape(f);
        const std::size_t k = f.degree;
        CylinderForm r = zero(k + 1);
        // base: p (x) dw
        if (base_dim(k + 1) > 0) apply_poly(m_ce.diff(k), f.base, r.base);
        // dt from base: p' dt ^ w
        for (std::size_t i = 0; i < f.base.size(); ++i) r.dt[i] = r.dt[i] + f.base[i].derivative();
        // dt from dt: -p dt ^ d eta
        if (k >= 1 && dt_dim(k + 1) > 0) {
            std::vector<Poly> tmp(dt_dim(k + 1));
            apply_poly(m_ce.diff(k - 1), f.dt, tmp);
            for (std::size_t i = 0; i < tmp.size(); ++i) r.dt[i] = r.dt[i] - tmp[i];
        }
        return r;
    }

    /// K(p dt ^ eta) = (-1)^{k-1} (int_0^t p) (x) eta on total degree k;
    /// K kills pure base forms.
    CylinderForm homotopy_K(const CylinderForm& f) const {
        check_shape(f);
        const std::size_t k = f.degree;
        if (k == 0) return zero(0);
        CylinderForm r = zero(k - 1);
        const bool flip = (k - 1) % 2 != 0;
        for (std::size_t i = 0; i < f.dt.size(); ++i) {
            Poly p = f.dt[i].integral();
            r.base[i] = flip ? Poly() - p : p;
        }
        return r;
    }

    /// Pullback along the slice at t = t0: evaluate the base part, drop dt.
    QVector incl_pullback(const CylinderForm& f, const Rational& t0) const {
        check_shape(f);
        QVector w(f.base.size());
        for (std::size_t i = 0; i < f.base.size(); ++i) w[i] = f.base[i].eval(t0);
        return w;
    }

    /// Pullback along the projection: a cochain included t-independently.
    CylinderForm proj_pullback(std::size_t k, const QVector& w) const {
        if (w.size() != base_dim(k)) throw DimensionMismatch("proj_pullback: cochain size");
        CylinderForm f = zero(k);
        for (std::size_t i = 0; i < w.size(); ++i) f.base[i] = Poly(w[i]);
        return f;
    }

    /**
     * Defect of the cylinder homotopy identity
     *   id - Pr* I_0* = (-1)^{k-1} (d K - K d)
     * on f; identically zero for every form.
     */
    CylinderForm homotopy_identity_defect(const CylinderForm& f) const {
        check_shape(f);
        const std::size_t k = f.degree;
        CylinderForm lhs = f;
        const QVector at0 = incl_pullback(f, Rational(0));
        for (std::size_t i = 0; i < lhs.base.size(); ++i) lhs.base[i] = lhs.base[i] - Poly(at0[i]);

        CylinderForm dK = differential(homotopy_K(f));
        CylinderForm Kd = homotopy_K(differential(f));
        const bool flip = (k + 1) % 2 != 0; // (-1)^{k-1}
        CylinderForm defect = lhs;
        for (std::size_t i = 0; i < defect.base.size(); ++i) {
            Poly rhs = dK.base[i] - Kd.base[i];
            defect.base[i] = defect.base[i] - (flip ? Poly() - rhs : rhs);
        }
        for (std::size_t i = 0; i < defect.dt.size(); ++i) {
            Poly rhs = dK.dt[i] - Kd.dt[i];
            defect.dt[i] = defect.dt[i] - (flip ? Poly() - rhs : rhs);
        }
        return defect;
    }

private:
    static void apply_poly(const QMatrix& M, const std::vector<Poly>& x, std::vector<Poly>& y) {
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j)
                if (!(M(i, j) == 0)) y[i] = y[i] + x[j] * M(i, j);
    }

    CEComplex m_ce;
};

} // namespace algco
