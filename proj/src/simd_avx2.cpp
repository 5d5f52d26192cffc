// AVX2+FMA variants of the batch kernels. Compiled with -mavx2 -mfma in its
// own translation unit; only entered after a runtime cpuid check.
//
// exp/log/sincos are Cephes-style double-precision evaluations (~1-2 ulp on
// the argument ranges the samplers use). Inputs outside the fast ranges fall
// back to libm lane-wise.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace shc::simd::detail {

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

// --- exp ---------------------------------------------------------------

const __m256d kExpC1 = splat(6.93145751953125e-1);
const __m256d kExpC2 = splat(1.42860682030941723212e-6);
const __m256d kLog2E = splat(1.4426950408889634073599);

inline __m256d exp4(__m256d x) {
    const __m256d hi = splat(709.0);
    const __m256d lo = splat(-709.0);
    x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

    __m256d px = _mm256_floor_pd(_mm256_fmadd_pd(kLog2E, x, splat(0.5)));
    __m128i n32 = _mm256_cvttpd_epi32(px);

    x = _mm256_fnmadd_pd(px, kExpC1, x);
    x = _mm256_fnmadd_pd(px, kExpC2, x);
    const __m256d xx = _mm256_mul_pd(x, x);

    // x * P(x^2)
    __m256d p = splat(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, xx, splat(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, xx, splat(9.99999999999999999910e-1));
    p = _mm256_mul_pd(p, x);

    __m256d q = splat(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, xx, splat(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, xx, splat(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, xx, splat(2.00000000000000000005e0));

    __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    r = _mm256_fmadd_pd(splat(2.0), r, splat(1.0));

    // scale by 2^n
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
    n64 = _mm256_slli_epi64(n64, 52);
    return _mm256_mul_pd(r, _mm256_castsi256_pd(n64));
}

// --- log ---------------------------------------------------------------

inline __m256d log4(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    // exponent field minus bias+1 so the mantissa lands in [0.5, 1)
    __m256i e64 = _mm256_srli_epi64(bits, 52);
    e64 = _mm256_sub_epi64(e64, _mm256_set1_epi64x(1022));
    // mantissa with exponent forced to 2^-1
    __m256i mbits = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
        _mm256_set1_epi64x(0x3FE0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mbits);

    // convert exponent to double (values are small integers)
    const __m256d magic = splat(0x1.8p52);
    __m256d e = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_add_epi64(e64, _mm256_castpd_si256(magic))), magic);

    const __m256d sqrth = splat(0.70710678118654752440);
    const __m256d below = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
    e = _mm256_sub_pd(e, _mm256_and_pd(below, splat(1.0)));
    m = _mm256_add_pd(m, _mm256_and_pd(below, m));
    m = _mm256_sub_pd(m, splat(1.0));

    const __m256d z = _mm256_mul_pd(m, m);

    __m256d p = splat(1.01875663804580931796e-4);
    p = _mm256_fmadd_pd(p, m, splat(4.97494994976747001425e-1));
    p = _mm256_fmadd_pd(p, m, splat(4.70579119878881725854e0));
    p = _mm256_fmadd_pd(p, m, splat(1.44989225341610930846e1));
    p = _mm256_fmadd_pd(p, m, splat(1.79368678507819816313e1));
    p = _mm256_fmadd_pd(p, m, splat(7.70838733755885391666e0));

    __m256d q = _mm256_add_pd(m, splat(1.12873587189167450590e1));
    q = _mm256_fmadd_pd(q, m, splat(4.52279145837532221105e1));
    q = _mm256_fmadd_pd(q, m, splat(8.29875266912776603211e1));
    q = _mm256_fmadd_pd(q, m, splat(7.11544750618563894466e1));
    q = _mm256_fmadd_pd(q, m, splat(2.31251620126765340583e1));

    __m256d y = _mm256_mul_pd(_mm256_mul_pd(m, z), _mm256_div_pd(p, q));
    y = _mm256_fnmadd_pd(e, splat(2.121944400546905827679e-4), y);
    y = _mm256_fnmadd_pd(splat(0.5), z, y);
    __m256d r = _mm256_add_pd(m, y);
    r = _mm256_fmadd_pd(e, splat(0.693359375), r);
    return r;
}

// --- sincos ------------------------------------------------------------

const __m256d kDP1 = splat(7.85398125648498535156e-1);
const __m256d kDP2 = splat(3.77489470793079817668e-8);
const __m256d kDP3 = splat(2.69515142907905952645e-15);

inline void sincos4(__m256d x, __m256d& sr, __m256d& cr) {
    const __m256d sign_mask = splat(-0.0);
    const __m256d xsign = _mm256_and_pd(x, sign_mask);
    const __m256d ax = _mm256_andnot_pd(sign_mask, x);

    __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, splat(1.27323954473516268615)));
    // force even
    const __m256d half_y = _mm256_mul_pd(y, splat(0.5));
    const __m256d parity = _mm256_sub_pd(half_y, _mm256_floor_pd(half_y)); // 0 or 0.5
    y = _mm256_add_pd(y, _mm256_add_pd(parity, parity));

    __m256d z = _mm256_fnmadd_pd(y, kDP1, ax);
    z = _mm256_fnmadd_pd(y, kDP2, z);
    z = _mm256_fnmadd_pd(y, kDP3, z);
    const __m256d zz = _mm256_mul_pd(z, z);

    __m256d ps = splat(1.58962301576546568060e-10);
    ps = _mm256_fmadd_pd(ps, zz, splat(-2.50507477628578072866e-8));
    ps = _mm256_fmadd_pd(ps, zz, splat(2.75573136213857245213e-6));
    ps = _mm256_fmadd_pd(ps, zz, splat(-1.98412698295895385996e-4));
    ps = _mm256_fmadd_pd(ps, zz, splat(8.33333333332211858878e-3));
    ps = _mm256_fmadd_pd(ps, zz, splat(-1.66666666666666307295e-1));
    const __m256d poly_s = _mm256_fmadd_pd(_mm256_mul_pd(ps, zz), z, z);

    __m256d pc = splat(-1.13585365213876817300e-11);
    pc = _mm256_fmadd_pd(pc, zz, splat(2.08757008419747316778e-9));
    pc = _mm256_fmadd_pd(pc, zz, splat(-2.75573141792967388112e-7));
    pc = _mm256_fmadd_pd(pc, zz, splat(2.48015872888517179954e-5));
    pc = _mm256_fmadd_pd(pc, zz, splat(-1.38888888888730564116e-3));
    pc = _mm256_fmadd_pd(pc, zz, splat(4.16666666666665929218e-2));
    __m256d poly_c = _mm256_fmadd_pd(_mm256_mul_pd(pc, zz), zz,
                                     _mm256_fnmadd_pd(splat(0.5), zz, splat(1.0)));

    // quadrant q = (y/2) mod 4, exact in double arithmetic for even y
    const __m256d f = _mm256_mul_pd(y, splat(0.125));
    const __m256d qm = _mm256_mul_pd(_mm256_sub_pd(f, _mm256_floor_pd(f)), splat(4.0));
    const __m256d q1 = _mm256_cmp_pd(qm, splat(1.0), _CMP_EQ_OQ);
    const __m256d q2 = _mm256_cmp_pd(qm, splat(2.0), _CMP_EQ_OQ);
    const __m256d q3 = _mm256_cmp_pd(qm, splat(3.0), _CMP_EQ_OQ);

    const __m256d swap = _mm256_or_pd(q1, q3);
    __m256d s = _mm256_blendv_pd(poly_s, poly_c, swap);
    __m256d c = _mm256_blendv_pd(poly_c, poly_s, swap);

    const __m256d s_flip = _mm256_and_pd(_mm256_or_pd(q2, q3), sign_mask);
    const __m256d c_flip = _mm256_and_pd(_mm256_or_pd(q1, q2), sign_mask);
    s = _mm256_xor_pd(s, s_flip);
    c = _mm256_xor_pd(c, c_flip);

    sr = _mm256_xor_pd(s, xsign);
    cr = c;
}

constexpr double kSinCosMax = 1.0e8; // beyond this the 3-part reduction degrades

inline bool all_within(__m256d x, double bound) {
    const __m256d ax = _mm256_andnot_pd(splat(-0.0), x);
    return _mm256_movemask_pd(_mm256_cmp_pd(ax, splat(bound), _CMP_LE_OQ)) == 0xF;
}

} // namespace

void vexp_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void vlog_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        // positive finite fast path; anything else goes through libm
        if (_mm256_movemask_pd(_mm256_cmp_pd(v, splat(0.0), _CMP_GT_OQ)) == 0xF) {
            _mm256_storeu_pd(out + i, log4(v));
        } else {
            for (int k = 0; k < 4; ++k) out[i + k] = std::log(x[i + k]);
        }
    }
    for (; i < n; ++i) out[i] = std::log(x[i]);
}

void vsincos_avx2(const double* x, double* s, double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        if (all_within(v, kSinCosMax)) {
            __m256d sv, cv;
            sincos4(v, sv, cv);
            _mm256_storeu_pd(s + i, sv);
            _mm256_storeu_pd(c + i, cv);
        } else {
            for (int k = 0; k < 4; ++k) {
                s[i + k] = std::sin(x[i + k]);
                c[i + k] = std::cos(x[i + k]);
            }
        }
    }
    for (; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void stable_subordinator_avx2(double gamma, double scale,
                              const double* u1, const double* u2,
                              double* out, std::size_t n) {
    const __m256d pi = splat(3.14159265358979323846);
    const __m256d g = splat(gamma);
    const __m256d one_m_g = splat(1.0 - gamma);
    const __m256d c1 = splat((1.0 - gamma) / gamma);
    const __m256d inv_g = splat(1.0 / gamma);
    const __m256d vscale = splat(scale);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_mul_pd(pi, _mm256_loadu_pd(u1 + i));
        __m256d s_full, s_g, s_1g, cdump;
        sincos4(x, s_full, cdump);
        sincos4(_mm256_mul_pd(g, x), s_g, cdump);
        sincos4(_mm256_mul_pd(one_m_g, x), s_1g, cdump);

        const __m256d ln_e = log4(_mm256_sub_pd(splat(0.0), log4(_mm256_loadu_pd(u2 + i))));
        // ln S1 = c1*(ln sin((1-g)x) - ln E) + ln sin(gx) - (1/g) ln sin(x)
        __m256d ln_s1 = _mm256_mul_pd(c1, _mm256_sub_pd(log4(s_1g), ln_e));
        ln_s1 = _mm256_add_pd(ln_s1, log4(s_g));
        ln_s1 = _mm256_fnmadd_pd(inv_g, log4(s_full), ln_s1);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vscale, exp4(ln_s1)));
    }
    if (i < n) {
        const double pi_s = 3.14159265358979323846;
        for (; i < n; ++i) {
            const double x = pi_s * u1[i];
            const double ln_e = std::log(-std::log(u2[i]));
            const double ln_s1 = (1.0 - gamma) / gamma * (std::log(std::sin((1.0 - gamma) * x)) - ln_e)
                               + std::log(std::sin(gamma * x))
                               - std::log(std::sin(x)) / gamma;
            out[i] = scale * std::exp(ln_s1);
        }
    }
}

void box_muller_avx2(const double* u1, const double* u2,
                     double* z1, double* z2, std::size_t n) {
    const __m256d two_pi = splat(6.28318530717958647693);
    const __m256d minus_two = splat(-2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_sqrt_pd(
            _mm256_mul_pd(minus_two, log4(_mm256_loadu_pd(u1 + i))));
        __m256d s, c;
        sincos4(_mm256_mul_pd(two_pi, _mm256_loadu_pd(u2 + i)), s, c);
        _mm256_storeu_pd(z1 + i, _mm256_mul_pd(r, c));
        _mm256_storeu_pd(z2 + i, _mm256_mul_pd(r, s));
    }
    for (; i < n; ++i) {
        const double r = std::sqrt(-2.0 * std::log(u1[i]));
        const double a = 6.28318530717958647693 * u2[i];
        z1[i] = r * std::cos(a);
        z2[i] = r * std::sin(a);
    }
}

} // namespace shc::simd::detail

#endif // x86
