#ifndef SLRF_FIELD_HPP
#define SLRF_FIELD_HPP

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "slrf/grid.hpp"

namespace slrf {

using Complex = std::complex<double>;

/// Where the values of a field came from. A field of Fourier samples may
/// hold samples of the continuous transform of a model, or the DFT of a
/// discrete image; downstream code sometimes needs to know which.
enum class FieldSource { unknown, continuous, dft };

/// Index domain convention of a field: frequency indices or pixel indices.
enum class Domain { frequency, spatial };

///
/// ### SampleField
///
/// A complex 2^k tensor valued function on a CenteredGrid. Order 0 is a
/// plain complex image of samples, order 1 a two component vector field,
/// order 2 a four component tensor field stored with both off-diagonal
/// copies so the component count stays exactly 2^k.
///
class SampleField {
public:
    SampleField() = default;

    SampleField(int order, const CenteredGrid& grid,
                FieldSource source = FieldSource::unknown,
                Domain domain = Domain::frequency)
        : order_(order), grid_(grid), source_(source), domain_(domain)
    {
        if (order < 0)
        {
            throw std::invalid_argument("SampleField: negative order");
        }
        comps_.resize(static_cast<std::size_t>(1) << order);
        for (auto& c : comps_)
        {
            c = Eigen::VectorXcd::Zero(grid.size());
        }
    }

    int order() const { return order_; }
    int components() const { return static_cast<int>(comps_.size()); }
    const CenteredGrid& grid() const { return grid_; }
    FieldSource source() const { return source_; }
    void set_source(FieldSource s) { source_ = s; }
    Domain domain() const { return domain_; }
    void set_domain(Domain d) { domain_ = d; }

    Eigen::VectorXcd& comp(int c) { return comps_[static_cast<std::size_t>(c)]; }
    const Eigen::VectorXcd& comp(int c) const
    {
        return comps_[static_cast<std::size_t>(c)];
    }

    Complex& at(int c, int k1, int k2)
    {
        return comps_[static_cast<std::size_t>(c)](grid_.offset(k1, k2));
    }
    Complex at(int c, int k1, int k2) const
    {
        return comps_[static_cast<std::size_t>(c)](grid_.offset(k1, k2));
    }

    /// Periodic lookup; indices outside the grid wrap around.
    Complex at_wrapped(int c, int k1, int k2) const
    {
        const auto [w1, w2] = grid_.wrap(k1, k2);
        return comps_[static_cast<std::size_t>(c)](grid_.offset(w1, w2));
    }

    double squared_norm() const
    {
        double s = 0.0;
        for (const auto& c : comps_)
        {
            s += c.squaredNorm();
        }
        return s;
    }

    double norm() const { return std::sqrt(squared_norm()); }

    /// Standard inner product sum(conj(this) .* other) over all components.
    Complex dot(const SampleField& other) const
    {
        require_same_shape(other, "dot");
        Complex s = 0.0;
        for (int c = 0; c < components(); ++c)
        {
            s += comps_[static_cast<std::size_t>(c)].dot(other.comp(c));
        }
        return s;
    }

    SampleField& operator+=(const SampleField& other)
    {
        require_same_shape(other, "operator+=");
        for (int c = 0; c < components(); ++c)
        {
            comps_[static_cast<std::size_t>(c)] += other.comp(c);
        }
        return *this;
    }

    SampleField& operator-=(const SampleField& other)
    {
        require_same_shape(other, "operator-=");
        for (int c = 0; c < components(); ++c)
        {
            comps_[static_cast<std::size_t>(c)] -= other.comp(c);
        }
        return *this;
    }

    SampleField& operator*=(Complex a)
    {
        for (auto& c : comps_)
        {
            c *= a;
        }
        return *this;
    }

    friend SampleField operator+(SampleField a, const SampleField& b)
    {
        a += b;
        return a;
    }
    friend SampleField operator-(SampleField a, const SampleField& b)
    {
        a -= b;
        return a;
    }
    friend SampleField operator*(Complex s, SampleField a)
    {
        a *= s;
        return a;
    }

    void require_same_shape(const SampleField& other, const char* where) const
    {
        if (order_ != other.order_ || !(grid_ == other.grid_))
        {
            throw std::invalid_argument(std::string(where) +
                                        ": field shape mismatch");
        }
    }

private:
    int order_ = 0;
    CenteredGrid grid_;
    FieldSource source_ = FieldSource::unknown;
    Domain domain_ = Domain::frequency;
    std::vector<Eigen::VectorXcd> comps_;
};

///
/// ### SpatialImage
///
/// Complex valued image on a centered pixel lattice of the same extents as
/// the frequency grid. Pixel `n` sits at position `x = (n1/N1, n2/N2)` in
/// `[-1/2, 1/2)^2`. The imaginary part is retained for diagnostics; the
/// real part is what gets displayed and measured.
///
struct SpatialImage {
    CenteredGrid grid;
    Eigen::VectorXcd values;

    SpatialImage() = default;
    explicit SpatialImage(const CenteredGrid& g)
        : grid(g), values(Eigen::VectorXcd::Zero(g.size()))
    {
    }

    Complex& at(int n1, int n2) { return values(grid.offset(n1, n2)); }
    Complex at(int n1, int n2) const { return values(grid.offset(n1, n2)); }

    Eigen::VectorXd real_part() const { return values.real(); }
};

} // namespace slrf

#endif // SLRF_FIELD_HPP
