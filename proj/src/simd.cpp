#include "shc/simd.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace shc::simd {

namespace detail {

// ---------------------------------------------------------------------------
// Scalar reference kernels
// ---------------------------------------------------------------------------

void vexp_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void vlog_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

void vsincos_scalar(const double* x, double* s, double* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void stable_subordinator_scalar(double gamma, double scale,
                                const double* u1, const double* u2,
                                double* out, std::size_t n) {
    const double pi = 3.14159265358979323846;
    const double c1 = (1.0 - gamma) / gamma;
    const double inv_gamma = 1.0 / gamma;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = pi * u1[i];
        const double s_full = std::sin(x);
        const double s_g = std::sin(gamma * x);
        const double s_1g = std::sin((1.0 - gamma) * x);
        const double ln_e = std::log(-std::log(u2[i]));
        const double ln_s1 = c1 * (std::log(s_1g) - ln_e)
                           + std::log(s_g) - inv_gamma * std::log(s_full);
        out[i] = scale * std::exp(ln_s1);
    }
}

void box_muller_scalar(const double* u1, const double* u2,
                       double* z1, double* z2, std::size_t n) {
    const double two_pi = 6.28318530717958647693;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::sqrt(-2.0 * std::log(u1[i]));
        const double a = two_pi * u2[i];
        z1[i] = r * std::cos(a);
        z2[i] = r * std::sin(a);
    }
}

// AVX2 variants, defined in simd_avx2.cpp (compiled with -mavx2 -mfma).
#if defined(SHC_HAVE_AVX2_TU)
void vexp_avx2(const double* x, double* out, std::size_t n);
void vlog_avx2(const double* x, double* out, std::size_t n);
void vsincos_avx2(const double* x, double* s, double* c, std::size_t n);
void stable_subordinator_avx2(double gamma, double scale,
                              const double* u1, const double* u2,
                              double* out, std::size_t n);
void box_muller_avx2(const double* u1, const double* u2,
                     double* z1, double* z2, std::size_t n);
#endif

} // namespace detail

namespace {

struct KernelTable {
    void (*vexp)(const double*, double*, std::size_t);
    void (*vlog)(const double*, double*, std::size_t);
    void (*vsincos)(const double*, double*, double*, std::size_t);
    void (*subordinator)(double, double, const double*, const double*, double*, std::size_t);
    void (*box_muller)(const double*, const double*, double*, double*, std::size_t);
};

constexpr KernelTable kScalar = {
    detail::vexp_scalar, detail::vlog_scalar, detail::vsincos_scalar,
    detail::stable_subordinator_scalar, detail::box_muller_scalar,
};

#if defined(SHC_HAVE_AVX2_TU)
constexpr KernelTable kAvx2 = {
    detail::vexp_avx2, detail::vlog_avx2, detail::vsincos_avx2,
    detail::stable_subordinator_avx2, detail::box_muller_avx2,
};
#endif

bool cpu_has_avx2() {
#if defined(SHC_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

void select(Backend want) {
#if defined(SHC_HAVE_AVX2_TU)
    if (want == Backend::avx2 && cpu_has_avx2()) {
        g_table.store(&kAvx2, std::memory_order_release);
        g_backend.store(Backend::avx2, std::memory_order_release);
        return;
    }
#endif
    g_table.store(&kScalar, std::memory_order_release);
    g_backend.store(Backend::scalar, std::memory_order_release);
}

const KernelTable& table() {
    const KernelTable* t = g_table.load(std::memory_order_acquire);
    if (!t) {
        Backend want = Backend::avx2;
        if (const char* env = std::getenv("SHC_SIMD")) {
            if (std::strcmp(env, "scalar") == 0) want = Backend::scalar;
        }
        select(want);
        t = g_table.load(std::memory_order_acquire);
    }
    return *t;
}

} // namespace

Backend active_backend() {
    table();
    return g_backend.load(std::memory_order_acquire);
}

const char* backend_name() {
    return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) { select(b); }

void vexp(const double* x, double* out, std::size_t n) { table().vexp(x, out, n); }
void vlog(const double* x, double* out, std::size_t n) { table().vlog(x, out, n); }
void vsincos(const double* x, double* s, double* c, std::size_t n) { table().vsincos(x, s, c, n); }

void stable_subordinator_batch(double gamma, double scale,
                               const double* u1, const double* u2,
                               double* out, std::size_t n) {
    table().subordinator(gamma, scale, u1, u2, out, n);
}

void box_muller_batch(const double* u1, const double* u2,
                      double* z1, double* z2, std::size_t n) {
    table().box_muller(u1, u2, z1, z2, n);
}

} // namespace shc::simd
