#include "kummer/bqf.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "kummer/errors.hpp"
#include "kummer/primes.hpp"

namespace kummer::bqf {

using linalg::mod_floor;

namespace {

Integer isqrt(const Integer & n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Integer gcd(const Integer & a, const Integer & b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

IntMatrix mat2(const Integer & p, const Integer & q, const Integer & r, const Integer & s)
{
    IntMatrix m(2, 2);
    m(0, 0) = p;
    m(0, 1) = q;
    m(1, 0) = r;
    m(1, 1) = s;
    return m;
}

void require_same_discriminant(const BinaryForm & f, const BinaryForm & g)
{
    if (f.discriminant() != g.discriminant())
        throw KummerError(ErrorCode::DiscriminantMismatch,
                          to_string(f) + " and " + to_string(g) + " have different discriminants");
}

/*
 * An SL2-equivalent copy of g whose first coefficient is prime to m, together
 * with the transformation used.
 */
BinaryForm with_first_coefficient_prime_to(const BinaryForm & g, const Integer & m, IntMatrix * used)
{
    if (gcd(g.a, m) == 1) {
        if (used)
            *used = IntMatrix::identity(2);
        return g;
    }
    for (long radius = 1; radius <= 200; ++radius)
        for (long x = 0; x <= radius; ++x)
            for (long y : {radius - x, x - radius}) {
                if (std::max(x, std::labs(y)) == 0)
                    continue;
                const Integer ix = x, iy = y;
                if (gcd(ix, iy) != 1)
                    continue;
                const Integer v = g(ix, iy);
                if (v == 0 || gcd(v, m) != 1)
                    continue;
                Integer one, s, t;
                mpz_gcdext(one.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), ix.get_mpz_t(), iy.get_mpz_t());
                // x*s + y*t = 1, so ((x, -t), (y, s)) has determinant 1
                const IntMatrix mt = mat2(ix, -t, iy, s);
                if (used)
                    *used = mt;
                return transform(g, mt);
            }
    throw KummerError(ErrorCode::NotPrimitive, "no represented value prime to " + m.get_str() + " for " + to_string(g));
}

} // namespace

IntMatrix BinaryForm::gram() const
{
    return mat2(2 * a, b, b, 2 * c);
}

bool BinaryForm::is_primitive() const
{
    return gcd(gcd(a, b), c) == 1;
}

BinaryForm BinaryForm::from_gram(const IntMatrix & gram)
{
    if (gram.rows() != 2 || !gram.is_symmetric() || gram(0, 0) % 2 != 0 || gram(1, 1) % 2 != 0)
        throw KummerError(ErrorCode::InvalidInput, "not an even symmetric 2x2 Gram matrix");
    return {gram(0, 0) / 2, gram(0, 1), gram(1, 1) / 2};
}

BinaryForm BinaryForm::principal(const Integer & d)
{
    const Integer delta = mod_floor(d, 2);
    return {1, delta, (delta - d) / 4};
}

std::string to_string(const BinaryForm & f)
{
    std::ostringstream os;
    os << '(' << f.a << ", " << f.b << ", " << f.c << ')';
    return os.str();
}

BinaryForm transform(const BinaryForm & f, const IntMatrix & m)
{
    const IntMatrix g = m.transpose() * f.gram() * m;
    return {g(0, 0) / 2, g(0, 1), g(1, 1) / 2};
}

void require_indefinite(const Integer & d)
{
    if (d <= 0)
        throw KummerError(ErrorCode::NotIndefinite, "discriminant " + d.get_str() + " is not positive");
    if (linalg::is_perfect_square(d))
        throw KummerError(ErrorCode::SquareDiscriminant, "discriminant " + d.get_str() + " is a perfect square");
}

bool is_reduced(const BinaryForm & f)
{
    const Integer d = f.discriminant();
    if (f.b <= 0 || f.b * f.b >= d)
        return false;
    const Integer twice_a = 2 * abs(f.a);
    const Integer lo = twice_a + f.b;
    if (lo * lo <= d) // sqrt(D) - b < 2|a|
        return false;
    const Integer hi = twice_a - f.b; // 2|a| < sqrt(D) + b
    return hi <= 0 || hi * hi < d;
}

BinaryForm rho(const BinaryForm & f, IntMatrix * step)
{
    const Integer d = f.discriminant();
    require_indefinite(d);
    const Integer abs_c = abs(f.c);
    const Integer two_c = 2 * abs_c;
    Integer r;
    if (f.c * f.c > d) {
        r = mod_floor(-f.b, two_c);
        if (r > abs_c)
            r -= two_c;
    } else {
        // largest r = -b mod 2|c| below sqrt(D)
        const Integer s = isqrt(d);
        r = s - mod_floor(s + f.b, two_c);
    }
    if (step)
        *step = mat2(0, -1, 1, (r + f.b) / (2 * f.c));
    return {f.c, r, (r * r - d) / (4 * f.c)};
}

Reduction reduce_with_transform(const BinaryForm & f)
{
    require_indefinite(f.discriminant());
    Reduction out{f, IntMatrix::identity(2)};
    IntMatrix step;
    while (!is_reduced(out.form)) {
        out.form = rho(out.form, &step);
        out.transform = out.transform * step;
    }
    return out;
}

BinaryForm reduce(const BinaryForm & f)
{
    require_indefinite(f.discriminant());
    BinaryForm g = f;
    while (!is_reduced(g))
        g = rho(g);
    return g;
}

std::vector<BinaryForm> cycle(const BinaryForm & f)
{
    const BinaryForm start = reduce(f);
    std::vector<BinaryForm> out{start};
    for (BinaryForm g = rho(start); g != start; g = rho(g))
        out.push_back(g);
    return out;
}

bool equivalent_sl2(const BinaryForm & f, const BinaryForm & g)
{
    require_same_discriminant(f, g);
    const BinaryForm target = reduce(g);
    const auto cyc = cycle(f);
    return std::find(cyc.begin(), cyc.end(), target) != cyc.end();
}

bool equivalent_gl2(const BinaryForm & f, const BinaryForm & g)
{
    return equivalent_sl2(f, g) || equivalent_sl2(f, g.opposite());
}

IntMatrix sl2_transform_between(const BinaryForm & f, const BinaryForm & g)
{
    require_same_discriminant(f, g);
    const Reduction rf = reduce_with_transform(f);
    const Reduction rg = reduce_with_transform(g);
    BinaryForm cur = rf.form;
    IntMatrix walk = IntMatrix::identity(2);
    IntMatrix step;
    while (cur != rg.form) {
        cur = rho(cur, &step);
        walk = walk * step;
        if (cur == rf.form)
            return {};
    }
    return rf.transform * walk * linalg::unimodular_inverse(rg.transform);
}

BinaryForm compose(const BinaryForm & f, const BinaryForm & g)
{
    require_same_discriminant(f, g);
    if (!f.is_primitive() || !g.is_primitive())
        throw KummerError(ErrorCode::NotPrimitive, "composition needs primitive forms");
    const Integer d = f.discriminant();
    require_indefinite(d);

    const BinaryForm g1 = with_first_coefficient_prime_to(g, f.a, nullptr);
    const Integer & a1 = f.a;
    const Integer & a2 = g1.a;
    const Integer m2 = abs(a2);

    // B = b1 mod 2a1, B = b2 mod 2a2
    Integer k = 0;
    if (m2 != 1) {
        Integer inv;
        const Integer a1_mod = mod_floor(a1, m2);
        mpz_invert(inv.get_mpz_t(), a1_mod.get_mpz_t(), m2.get_mpz_t());
        k = mod_floor(((g1.b - f.b) / 2) * inv, m2);
    }
    const Integer big_b = f.b + 2 * a1 * k;
    const Integer a3 = a1 * a2;
    const Integer num = big_b * big_b - d;
    if (num % (4 * a3) != 0)
        throw KummerError(ErrorCode::InvalidInput, "united forms failed to compose");
    return reduce({a3, big_b, num / (4 * a3)});
}

bool is_fundamental_discriminant(const Integer & d)
{
    if (d == 1 || d == 0)
        return false;
    const Integer ad = abs(d);
    const Integer r = mod_floor(d, 4);
    if (r == 1)
        return primes::is_squarefree(primes::to_u64(ad));
    if (r != 0)
        return false;
    const Integer m = d / 4;
    const Integer rm = mod_floor(m, 4);
    if (rm != 2 && rm != 3)
        return false;
    return primes::is_squarefree(primes::to_u64(abs(m)));
}

std::vector<BinaryForm> reduced_forms(const Integer & d)
{
    require_indefinite(d);
    const std::uint64_t dd = primes::to_u64(d);
    if (dd >= (std::uint64_t{1} << 62))
        throw KummerError(ErrorCode::OverflowScope, "discriminant too large for enumeration");
    const auto D = static_cast<std::int64_t>(dd);
    const auto s = static_cast<std::int64_t>(mpz_get_ui(isqrt(d).get_mpz_t()));

    std::vector<BinaryForm> out;
    if (D % 4 != 0 && D % 4 != 1)
        return out;
    for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        const std::int64_t n = (D - b * b) / 4; // ac = -n
        const std::int64_t a_min = std::max<std::int64_t>(1, (s + 2 - b) / 2);
        const std::int64_t a_max = (s + b) / 2;
        for (std::int64_t a = a_min; a <= a_max; ++a) {
            if (n % a != 0)
                continue;
            const std::int64_t c = n / a;
            out.emplace_back(a, b, -c);
            out.emplace_back(-a, b, c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t ClassGroup::class_of(const BinaryForm & f) const
{
    if (f.discriminant() != discriminant)
        throw KummerError(ErrorCode::DiscriminantMismatch, to_string(f) + " is not of discriminant " + discriminant.get_str());
    const auto it = index.find(reduce(f));
    if (it == index.end())
        throw KummerError(ErrorCode::NotPrimitive, to_string(f) + " is not in the class group");
    return it->second;
}

std::size_t ClassGroup::inverse(std::size_t i) const
{
    return class_of(reps.at(i).opposite());
}

ClassGroup class_group(const Integer & d)
{
    require_indefinite(d);
    if (!is_fundamental_discriminant(d))
        throw KummerError(ErrorCode::NotFundamental, d.get_str() + " is not a fundamental discriminant");

    ClassGroup cg;
    cg.discriminant = d;
    // a alternates in sign along a reduced cycle, so every cycle has a form with a > 0
    for (const auto & f : reduced_forms(d)) {
        if (f.a < 0 || cg.index.count(f))
            continue;
        const std::size_t idx = cg.reps.size();
        cg.reps.push_back(f); // first unseen positive form in lexicographic order
        std::vector<BinaryForm> cyc{f};
        cg.index.emplace(f, idx);
        for (BinaryForm g = rho(f); g != f; g = rho(g)) {
            cg.index.emplace(g, idx);
            cyc.push_back(g);
        }
        cg.cycles.push_back(std::move(cyc));
    }

    const std::size_t h = cg.reps.size();
    cg.identity = cg.class_of(BinaryForm::principal(d));
    cg.table.assign(h, std::vector<std::size_t>(h));
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) {
            const std::size_t k = cg.class_of(compose(cg.reps[i], cg.reps[j]));
            cg.table[i][j] = k;
            cg.table[j][i] = k;
        }
    return cg;
}

std::vector<std::vector<std::size_t>> genus_split(const ClassGroup & cg)
{
    const Integer & d = cg.discriminant;
    if (d % 2 == 0)
        throw KummerError(ErrorCode::UnsupportedDiscriminant, "even discriminants are outside the supported setting");
    const auto fac = primes::factor(primes::to_u64(d));
    if (fac.size() > 2)
        throw KummerError(ErrorCode::UnsupportedDiscriminant, d.get_str() + " has more than two prime factors");

    std::map<std::vector<int>, std::vector<std::size_t>> by_character;
    for (std::size_t i = 0; i < cg.h_plus(); ++i) {
        IntMatrix used;
        const BinaryForm g = with_first_coefficient_prime_to(cg.reps[i], d, &used);
        std::vector<int> key;
        for (const auto & [p, e] : fac) {
            const Integer ip = Integer(static_cast<unsigned long>(p));
            const Integer m = mod_floor(g.a, ip);
            key.push_back(mpz_legendre(m.get_mpz_t(), ip.get_mpz_t()));
        }
        by_character[key].push_back(i);
    }
    std::vector<std::vector<std::size_t>> genera;
    for (auto & [key, members] : by_character)
        genera.push_back(std::move(members));
    std::sort(genera.begin(), genera.end(), [](const auto & x, const auto & y) { return x.front() < y.front(); });
    return genera;
}

std::vector<std::size_t> gl2_classes_per_genus(const ClassGroup & cg,
                                               const std::vector<std::vector<std::size_t>> & genera)
{
    std::vector<std::size_t> out;
    for (const auto & genus : genera) {
        std::size_t n = 0;
        for (std::size_t i : genus)
            if (i <= cg.inverse(i))
                ++n;
        out.push_back(n);
    }
    return out;
}

UnitData fundamental_unit(const Integer & d)
{
    require_indefinite(d);
    const Integer r4 = mod_floor(d, 4);
    if (r4 != 0 && r4 != 1)
        throw KummerError(ErrorCode::InvalidInput, d.get_str() + " is not a discriminant (must be 0 or 1 mod 4)");

    // continued fraction of (P0 + sqrt(D)) / 2; convergent p/q gives t = 2p - q P0, u = q
    const Integer s = isqrt(d);
    const Integer p0 = mod_floor(d, 2);
    Integer big_p = p0, big_q = 2;
    Integer p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    for (;;) {
        const Integer a = linalg::floor_div(big_p + s, big_q);
        const Integer p = a * p_prev + p_prev2;
        const Integer q = a * q_prev + q_prev2;
        const Integer t = 2 * p - q * p0;
        const Integer norm = t * t - d * q * q;
        if (norm == 4 || norm == -4) {
            UnitData unit{t, q, norm == 4 ? 1 : -1, {}};
            using Dec = boost::multiprecision::cpp_dec_float_50;
            const Dec eps = (Dec(t.get_str()) + Dec(q.get_str()) * boost::multiprecision::sqrt(Dec(d.get_str()))) / 2;
            unit.epsilon_approx = eps.str(50);
            return unit;
        }
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
        big_p = a * big_q - big_p;
        big_q = (d - big_p * big_p) / big_q;
    }
}

std::pair<Integer, Integer> pell_plus4(const UnitData & unit, const Integer & d)
{
    if (unit.norm_sign == 1)
        return {unit.t, unit.u};
    return {(unit.t * unit.t + d * unit.u * unit.u) / 2, unit.t * unit.u};
}

std::vector<IntMatrix> automorph_generators(const BinaryForm & f)
{
    const Integer d = f.discriminant();
    require_indefinite(d);

    std::vector<IntMatrix> gens;
    gens.push_back(mat2(-1, 0, 0, -1));

    const auto [t, u] = pell_plus4(fundamental_unit(d), d);
    gens.push_back(mat2((t - f.b * u) / 2, -f.c * u, f.a * u, (t + f.b * u) / 2));

    const IntMatrix to_opposite = sl2_transform_between(f, f.opposite());
    if (!to_opposite.empty())
        gens.push_back(to_opposite * mat2(1, 0, 0, -1));
    return gens;
}

} // namespace kummer::bqf
