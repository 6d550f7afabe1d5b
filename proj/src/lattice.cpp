#include "kummer/lattice.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "kummer/errors.hpp"

namespace kummer::lattice {

using linalg::mod_floor;

EvenLattice::EvenLattice(IntMatrix gram) : gram_(std::move(gram))
{
    if (!gram_.is_symmetric())
        throw KummerError(ErrorCode::InvalidInput, "Gram matrix must be square and symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        if (gram_(i, i) % 2 != 0)
            throw KummerError(ErrorCode::NotEven, "Gram matrix has an odd diagonal entry");
    if (linalg::det(gram_) == 0)
        throw KummerError(ErrorCode::SingularMatrix, "lattice is degenerate");
}

bool EvenLattice::is_indefinite() const
{
    const auto s = signature();
    return s.pos > 0 && s.neg > 0;
}

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<Integer> orders, Integer denominator, IntMatrix values)
    : orders_(std::move(orders)), denominator_(std::move(denominator)), values_(std::move(values))
{
    if (values_.rows() != orders_.size() || values_.cols() != orders_.size())
        throw KummerError(ErrorCode::DimensionMismatch, "value matrix does not match the generator count");
    if (denominator_ <= 0)
        throw KummerError(ErrorCode::InvalidInput, "denominator must be positive");
    for (const auto & m : orders_)
        if (m < 2)
            throw KummerError(ErrorCode::InvalidInput, "cyclic factors must have order >= 2");
    normalize();
}

void FiniteQuadraticForm::normalize()
{
    const Integer two_den = 2 * denominator_;
    for (std::size_t i = 0; i < orders_.size(); ++i)
        for (std::size_t j = 0; j < orders_.size(); ++j)
            values_(i, j) = mod_floor(values_(i, j), i == j ? two_den : denominator_);
}

Integer FiniteQuadraticForm::group_order() const
{
    Integer n = 1;
    for (const auto & m : orders_)
        n *= m;
    return n;
}

namespace {

Rational reduce_mod(const Rational & x, long period)
{
    // x - period * floor(x / period)
    Integer num = x.get_num();
    Integer den = x.get_den() * period;
    Rational r(linalg::mod_floor(num, den), x.get_den());
    r.canonicalize();
    return r;
}

} // namespace

Rational FiniteQuadraticForm::q(const std::vector<Integer> & x) const
{
    if (x.size() != orders_.size())
        throw KummerError(ErrorCode::DimensionMismatch, "element has wrong number of coordinates");
    Integer num = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            num += x[i] * x[j] * values_(i, j);
    Rational r(num, denominator_);
    r.canonicalize();
    return reduce_mod(r, 2);
}

Rational FiniteQuadraticForm::b(const std::vector<Integer> & x, const std::vector<Integer> & y) const
{
    if (x.size() != orders_.size() || y.size() != orders_.size())
        throw KummerError(ErrorCode::DimensionMismatch, "element has wrong number of coordinates");
    Integer num = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            num += x[i] * y[j] * values_(i, j);
    Rational r(num, denominator_);
    r.canonicalize();
    return reduce_mod(r, 1);
}

EvenLattice rescale(const EvenLattice & l, const Integer & m)
{
    if (m == 0)
        throw KummerError(ErrorCode::InvalidInput, "rescaling factor must be nonzero");
    IntMatrix g = l.gram().scaled(m);
    for (std::size_t i = 0; i < g.rows(); ++i)
        if (g(i, i) % 2 != 0)
            throw KummerError(ErrorCode::OddResult, "rescaled lattice is not even");
    return EvenLattice(std::move(g));
}

EvenLattice hyperbolic_U()
{
    return EvenLattice(IntMatrix{{0, 1}, {1, 0}});
}

EvenLattice hyperbolic_U3()
{
    const IntMatrix u{{0, 1}, {1, 0}};
    return EvenLattice(linalg::direct_sum(linalg::direct_sum(u, u), u));
}

FiniteQuadraticForm discriminant_form(const EvenLattice & l)
{
    const IntMatrix & g = l.gram();
    const std::size_t n = g.rows();
    const auto snf = linalg::smith_normal_form(g);

    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < n; ++i)
        if (snf.d[i] > 1)
            gens.push_back(i);
    if (gens.empty())
        return FiniteQuadraticForm::trivial();

    const IntMatrix u_inv = linalg::unimodular_inverse(snf.u);
    const linalg::RatMatrix g_inv = linalg::inverse(g);
    const Integer exponent = snf.d[gens.back()];
    const Integer den = 2 * exponent;

    // y_k = u^{-1} e_k is the image of the k-th generator in Z^n / gram Z^n
    auto column = [&](std::size_t k) {
        std::vector<Integer> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = u_inv(i, k);
        return y;
    };

    const std::size_t k = gens.size();
    IntMatrix values(k, k);
    std::vector<Integer> orders;
    for (std::size_t a = 0; a < k; ++a) {
        orders.push_back(snf.d[gens[a]]);
        const auto ya = column(gens[a]);
        for (std::size_t b = 0; b < k; ++b) {
            const auto yb = column(gens[b]);
            Rational v = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    v += ya[i] * g_inv(i, j) * yb[j];
            v *= den;
            v.canonicalize();
            if (v.get_den() != 1)
                throw KummerError(ErrorCode::InvalidInput, "discriminant value outside the expected denominator");
            values(a, b) = v.get_num();
        }
    }
    return {std::move(orders), den, std::move(values)};
}

FiniteQuadraticForm negate_form(const FiniteQuadraticForm & f)
{
    if (f.num_generators() == 0)
        return f;
    return {f.orders(), f.denominator(), -f.values()};
}

std::size_t min_generators(const FiniteQuadraticForm & f)
{
    return f.num_generators();
}

namespace {

/* All x in the group of g with m * x = 0. */
std::vector<std::vector<Integer>> torsion_elements(const FiniteQuadraticForm & g, const Integer & m)
{
    std::vector<std::vector<Integer>> out;
    const std::size_t k = g.num_generators();
    std::vector<Integer> step(k), count(k);
    for (std::size_t j = 0; j < k; ++j) {
        Integer c;
        mpz_gcd(c.get_mpz_t(), g.orders()[j].get_mpz_t(), m.get_mpz_t());
        count[j] = c;
        step[j] = g.orders()[j] / c;
    }
    std::vector<Integer> idx(k, 0);
    for (;;) {
        std::vector<Integer> x(k);
        for (std::size_t j = 0; j < k; ++j)
            x[j] = idx[j] * step[j];
        out.push_back(std::move(x));
        std::size_t j = 0;
        while (j < k) {
            if (++idx[j] < count[j])
                break;
            idx[j] = 0;
            ++j;
        }
        if (j == k)
            break;
    }
    return out;
}

bool generates(const FiniteQuadraticForm & g, const std::vector<std::vector<Integer>> & images)
{
    const std::size_t k = g.num_generators();
    IntMatrix m(images.size() + k, k);
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            m(i, j) = images[i][j];
    for (std::size_t j = 0; j < k; ++j)
        m(images.size() + j, j) = g.orders()[j];
    const auto snf = linalg::smith_normal_form(m);
    if (snf.rank() != k)
        return false;
    return std::all_of(snf.d.begin(), snf.d.end(), [](const Integer & d) { return d == 1; });
}

} // namespace

bool isomorphic(const FiniteQuadraticForm & f, const FiniteQuadraticForm & g)
{
    if (f.orders() != g.orders())
        return false;
    const std::size_t k = f.num_generators();
    if (k == 0)
        return true;

    auto unit = [k](std::size_t i) {
        std::vector<Integer> e(k, 0);
        e[i] = 1;
        return e;
    };

    // Map the highest-order generator first; it constrains the search most.
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i)
        order[i] = k - 1 - i;

    std::vector<std::vector<std::vector<Integer>>> candidates(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Rational target = f.q(unit(i));
        for (auto & x : torsion_elements(g, f.orders()[i]))
            if (g.q(x) == target)
                candidates[i].push_back(std::move(x));
    }

    std::vector<std::vector<Integer>> images(k);
    std::function<bool(std::size_t)> assign = [&](std::size_t depth) -> bool {
        if (depth == k)
            return generates(g, images);
        const std::size_t i = order[depth];
        for (const auto & h : candidates[i]) {
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                const std::size_t j = order[d];
                ok = g.b(h, images[j]) == f.b(unit(i), unit(j));
            }
            if (!ok)
                continue;
            images[i] = h;
            if (assign(depth + 1))
                return true;
        }
        return false;
    };
    return assign(0);
}

Complement orthogonal_complement(const EvenLattice & ambient, const IntMatrix & image_basis)
{
    if (image_basis.cols() != ambient.rank())
        throw KummerError(ErrorCode::DimensionMismatch, "image basis is not in ambient coordinates");
    if (linalg::rank(image_basis) != image_basis.rows())
        throw KummerError(ErrorCode::DegenerateInput, "image basis rows are linearly dependent");

    IntMatrix basis = linalg::kernel_saturation(ambient.gram() * image_basis.transpose());
    IntMatrix gram = basis * ambient.gram() * basis.transpose();
    if (linalg::det(gram) == 0)
        throw KummerError(ErrorCode::DegenerateInput, "orthogonal complement is degenerate");
    return {std::move(basis), EvenLattice(std::move(gram))};
}

bool is_primitive_embedding(const EvenLattice & ambient, const IntMatrix & image_basis)
{
    if (image_basis.cols() != ambient.rank())
        throw KummerError(ErrorCode::DimensionMismatch, "image basis is not in ambient coordinates");
    const auto snf = linalg::smith_normal_form(image_basis);
    if (snf.rank() != image_basis.rows())
        return false;
    return std::all_of(snf.d.begin(), snf.d.end(), [](const Integer & d) { return d == 1; });
}

} // namespace kummer::lattice
