#include "plan/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <vector>

namespace plan::kernels {

namespace {
std::atomic<bool> g_parallel{true};
// Below this много work items OpenMP overhead dominates; stay serial.
constexpr std::size_t kMinParallelWork = 16 * 1024;
} // namespace

void set_parallel(bool enabled) { g_parallel.store(enabled, std::memory_order_relaxed); }
bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// serial reference
// ---------------------------------------------------------------------------

namespace serial {

template <class S>
void matmul_nn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
    for (std::size_t i = 0; i < m; ++i) {
        S* crow = c + i * n;
        if (!acc) std::fill(crow, crow + n, S(0));
        const S* arow = a + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const S av = arow[p];
            const S* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <class S>
void matmul_nt(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
    for (std::size_t i = 0; i < m; ++i) {
        const S* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const S* brow = b + j * k;
            S s(0);
            for (std::size_t p = 0; p < k; ++p) s += arow[p] * brow[p];
            c[i * n + j] = acc ? c[i * n + j] + s : s;
        }
    }
}

template <class S>
void matmul_tn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
    for (std::size_t i = 0; i < m; ++i) {
        S* crow = c + i * n;
        if (!acc) std::fill(crow, crow + n, S(0));
        for (std::size_t p = 0; p < k; ++p) {
            const S av = a[p * m + i];
            const S* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <class S>
void add(const S* a, const S* b, S* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
}

template <class S>
void axpy(S alpha, const S* x, S* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <class S>
void scale(const S* x, S alpha, S* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i];
}

template <class S>
void hadamard(const S* a, const S* b, S* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) c[i] = a[i] * b[i];
}

template <class S>
void relu_fwd(const S* x, S* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > S(0) ? x[i] : S(0);
}

template <class S>
void relu_bwd(const S* x, const S* dy, S* dx, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > S(0)) dx[i] += dy[i];
}

template <class S>
S sum(const S* x, std::size_t n) {
    S s(0);
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

template <class S>
static bool softmax_one_row(const S* xr, S* yr, std::size_t cols, const std::uint8_t* mask) {
    S mx = -std::numeric_limits<S>::infinity();
    bool any = false;
    for (std::size_t j = 0; j < cols; ++j) {
        if (mask && !mask[j]) continue;
        any = true;
        if (xr[j] > mx) mx = xr[j];
    }
    if (!any) return false;
    S denom(0);
    for (std::size_t j = 0; j < cols; ++j) {
        if (mask && !mask[j]) {
            yr[j] = S(0);
            continue;
        }
        yr[j] = std::exp(xr[j] - mx);
        denom += yr[j];
    }
    const S inv = S(1) / denom;
    for (std::size_t j = 0; j < cols; ++j) yr[j] *= inv;
    return true;
}

template <class S>
bool softmax_rows(const S* x, S* y, std::size_t rows, std::size_t cols, const std::uint8_t* mask) {
    bool ok = true;
    for (std::size_t i = 0; i < rows; ++i)
        ok &= softmax_one_row(x + i * cols, y + i * cols, cols, mask);
    return ok;
}

template <class S>
void softmax_rows_bwd(const S* y, const S* dy, S* dx, std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const S* yr = y + i * cols;
        const S* dyr = dy + i * cols;
        S dot(0);
        for (std::size_t j = 0; j < cols; ++j) dot += yr[j] * dyr[j];
        S* dxr = dx + i * cols;
        for (std::size_t j = 0; j < cols; ++j) dxr[j] += yr[j] * (dyr[j] - dot);
    }
}

template <class S>
static void layer_norm_one_row(const S* xr, const S* gain, const S* bias, S* yr, S* xhr,
                               S* inv_std, std::size_t d, S eps) {
    S mean(0);
    for (std::size_t j = 0; j < d; ++j) mean += xr[j];
    mean /= S(d);
    S var(0);
    for (std::size_t j = 0; j < d; ++j) {
        const S c = xr[j] - mean;
        var += c * c;
    }
    var /= S(d);
    const S inv = S(1) / std::sqrt(var + eps);
    *inv_std = inv;
    for (std::size_t j = 0; j < d; ++j) {
        xhr[j] = (xr[j] - mean) * inv;
        yr[j] = gain[j] * xhr[j] + bias[j];
    }
}

template <class S>
void layer_norm_fwd(const S* x, const S* gain, const S* bias, S* y, S* xhat, S* inv_std,
                    std::size_t rows, std::size_t d, S eps) {
    for (std::size_t i = 0; i < rows; ++i)
        layer_norm_one_row(x + i * d, gain, bias, y + i * d, xhat + i * d, inv_std + i, d, eps);
}

template <class S>
void layer_norm_bwd(const S* xhat, const S* inv_std, const S* gain, const S* dy,
                    S* dx, S* dgain, S* dbias, std::size_t rows, std::size_t d) {
    for (std::size_t i = 0; i < rows; ++i) {
        const S* xhr = xhat + i * d;
        const S* dyr = dy + i * d;
        S m1(0), m2(0);
        for (std::size_t j = 0; j < d; ++j) {
            const S dyh = dyr[j] * gain[j];
            m1 += dyh;
            m2 += dyh * xhr[j];
        }
        m1 /= S(d);
        m2 /= S(d);
        const S inv = inv_std[i];
        S* dxr = dx + i * d;
        for (std::size_t j = 0; j < d; ++j) {
            const S dyh = dyr[j] * gain[j];
            dxr[j] += inv * (dyh - m1 - xhr[j] * m2);
            dgain[j] += dyr[j] * xhr[j];
            dbias[j] += dyr[j];
        }
    }
}

template <class S>
void max_over_rows(const S* x, S* out, std::size_t* argmax, std::size_t rows, std::size_t cols) {
    for (std::size_t j = 0; j < cols; ++j) {
        out[j] = x[j];
        argmax[j] = 0;
    }
    for (std::size_t i = 1; i < rows; ++i) {
        const S* xr = x + i * cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (xr[j] > out[j]) {
                out[j] = xr[j];
                argmax[j] = i;
            }
        }
    }
}

template <class S>
void relation_logits_fwd(const S* q, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t) {
    for (std::size_t i = 0; i < n; ++i) {
        const S* qi = q + i * d;
        for (std::size_t j = 0; j < n; ++j) {
            const S* row = table + labels[i * n + j] * d;
            S s(0);
            for (std::size_t p = 0; p < d; ++p) s += qi[p] * row[p];
            out[i * n + j] = s;
        }
    }
}

template <class S>
void relation_logits_bwd(const S* g, const S* q, const S* table, const std::uint8_t* labels,
                         S* dq, S* dtable, std::size_t n, std::size_t d, std::size_t) {
    for (std::size_t i = 0; i < n; ++i) {
        const S* qi = q + i * d;
        S* dqi = dq ? dq + i * d : nullptr;
        for (std::size_t j = 0; j < n; ++j) {
            const S gij = g[i * n + j];
            const std::size_t r = labels[i * n + j];
            if (dqi) {
                const S* row = table + r * d;
                for (std::size_t p = 0; p < d; ++p) dqi[p] += gij * row[p];
            }
            if (dtable) {
                S* drow = dtable + r * d;
                for (std::size_t p = 0; p < d; ++p) drow[p] += gij * qi[p];
            }
        }
    }
}

template <class S>
void relation_values_fwd(const S* a, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t) {
    for (std::size_t i = 0; i < n; ++i) {
        S* oi = out + i * d;
        std::fill(oi, oi + d, S(0));
        for (std::size_t j = 0; j < n; ++j) {
            const S aij = a[i * n + j];
            const S* row = table + labels[i * n + j] * d;
            for (std::size_t p = 0; p < d; ++p) oi[p] += aij * row[p];
        }
    }
}

template <class S>
void relation_values_bwd(const S* g, const S* a, const S* table, const std::uint8_t* labels,
                         S* da, S* dtable, std::size_t n, std::size_t d, std::size_t) {
    for (std::size_t i = 0; i < n; ++i) {
        const S* gi = g + i * d;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t r = labels[i * n + j];
            const S* row = table + r * d;
            if (da) {
                S s(0);
                for (std::size_t p = 0; p < d; ++p) s += gi[p] * row[p];
                da[i * n + j] += s;
            }
            if (dtable) {
                const S aij = a[i * n + j];
                S* drow = dtable + r * d;
                for (std::size_t p = 0; p < d; ++p) drow[p] += aij * gi[p];
            }
        }
    }
}

} // namespace serial

// ---------------------------------------------------------------------------
// OpenMP variants. Parallelism is over independent rows/elements, so the
// per-element accumulation order matches the serial reference except for
// sum(), which reassociates.
// ---------------------------------------------------------------------------

namespace omp {

template <class S>
void matmul_nn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)m; ++i) {
        S* crow = c + i * n;
        if (!acc) std::fill(crow, crow + n, S(0));
        const S* arow = a + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const S av = arow[p];
            const S* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <class S>
void matmul_nt(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)m; ++i) {
        const S* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const S* brow = b + j * k;
            S s(0);
            for (std::size_t p = 0; p < k; ++p) s += arow[p] * brow[p];
            c[i * n + j] = acc ? c[i * n + j] + s : s;
        }
    }
}

template <class S>
void matmul_tn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)m; ++i) {
        S* crow = c + i * n;
        if (!acc) std::fill(crow, crow + n, S(0));
        for (std::size_t p = 0; p < k; ++p) {
            const S av = a[p * m + i];
            const S* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <class S>
void add(const S* a, const S* b, S* c, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) c[i] = a[i] + b[i];
}

template <class S>
void axpy(S alpha, const S* x, S* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) y[i] += alpha * x[i];
}

template <class S>
void scale(const S* x, S alpha, S* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) y[i] = alpha * x[i];
}

template <class S>
void hadamard(const S* a, const S* b, S* c, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) c[i] = a[i] * b[i];
}

template <class S>
void relu_fwd(const S* x, S* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) y[i] = x[i] > S(0) ? x[i] : S(0);
}

template <class S>
void relu_bwd(const S* x, const S* dy, S* dx, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i)
        if (x[i] > S(0)) dx[i] += dy[i];
}

template <class S>
S sum(const S* x, std::size_t n) {
    S s(0);
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (long long i = 0; i < (long long)n; ++i) s += x[i];
    return s;
}

template <class S>
bool softmax_rows(const S* x, S* y, std::size_t rows, std::size_t cols, const std::uint8_t* mask) {
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(& : ok)
    for (long long i = 0; i < (long long)rows; ++i)
        ok &= serial::softmax_one_row(x + i * cols, y + i * cols, cols, mask);
    return ok;
}

template <class S>
void softmax_rows_bwd(const S* y, const S* dy, S* dx, std::size_t rows, std::size_t cols) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)rows; ++i)
        serial::softmax_rows_bwd(y + i * cols, dy + i * cols, dx + i * cols, 1, cols);
}

template <class S>
void layer_norm_fwd(const S* x, const S* gain, const S* bias, S* y, S* xhat, S* inv_std,
                    std::size_t rows, std::size_t d, S eps) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)rows; ++i)
        serial::layer_norm_one_row(x + i * d, gain, bias, y + i * d, xhat + i * d, inv_std + i, d,
                                   eps);
}

template <class S>
void layer_norm_bwd(const S* xhat, const S* inv_std, const S* gain, const S* dy,
                    S* dx, S* dgain, S* dbias, std::size_t rows, std::size_t d) {
    // dgain/dbias accumulate across rows; keep那 reduction serial, rows carry dx.
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)rows; ++i) {
        const S* xhr = xhat + i * d;
        const S* dyr = dy + i * d;
        S m1(0), m2(0);
        for (std::size_t j = 0; j < d; ++j) {
            const S dyh = dyr[j] * gain[j];
            m1 += dyh;
            m2 += dyh * xhr[j];
        }
        m1 /= S(d);
        m2 /= S(d);
        const S inv = inv_std[i];
        S* dxr = dx + i * d;
        for (std::size_t j = 0; j < d; ++j) {
            const S dyh = dyr[j] * gain[j];
            dxr[j] += inv * (dyh - m1 - xhr[j] * m2);
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        const S* xhr = xhat + i * d;
        const S* dyr = dy + i * d;
        for (std::size_t j = 0; j < d; ++j) {
            dgain[j] += dyr[j] * xhr[j];
            dbias[j] += dyr[j];
        }
    }
}

template <class S>
void max_over_rows(const S* x, S* out, std::size_t* argmax, std::size_t rows, std::size_t cols) {
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < (long long)cols; ++j) {
        S best = x[j];
        std::size_t arg = 0;
        for (std::size_t i = 1; i < rows; ++i) {
            if (x[i * cols + j] > best) {
                best = x[i * cols + j];
                arg = i;
            }
        }
        out[j] = best;
        argmax[j] = arg;
    }
}

template <class S>
void relation_logits_fwd(const S* q, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) {
        const S* qi = q + i * d;
        for (std::size_t j = 0; j < n; ++j) {
            const S* row = table + labels[i * n + j] * d;
            S s(0);
            for (std::size_t p = 0; p < d; ++p) s += qi[p] * row[p];
            out[i * n + j] = s;
        }
    }
    (void)n_labels;
}

template <class S>
void relation_logits_bwd(const S* g, const S* q, const S* table, const std::uint8_t* labels,
                         S* dq, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels) {
    if (dq) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < (long long)n; ++i) {
            S* dqi = dq + i * d;
            for (std::size_t j = 0; j < n; ++j) {
                const S gij = g[i * n + j];
                const S* row = table + labels[i * n + j] * d;
                for (std::size_t p = 0; p < d; ++p) dqi[p] += gij * row[p];
            }
        }
    }
    // The table has only n_labels rows; accumulate serially.
    if (dtable) serial::relation_logits_bwd(g, q, table, labels, nullptr, dtable, n, d, n_labels);
}

template <class S>
void relation_values_fwd(const S* a, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) {
        S* oi = out + i * d;
        std::fill(oi, oi + d, S(0));
        for (std::size_t j = 0; j < n; ++j) {
            const S aij = a[i * n + j];
            const S* row = table + labels[i * n + j] * d;
            for (std::size_t p = 0; p < d; ++p) oi[p] += aij * row[p];
        }
    }
    (void)n_labels;
}

template <class S>
void relation_values_bwd(const S* g, const S* a, const S* table, const std::uint8_t* labels,
                         S* da, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels) {
    if (da) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < (long long)n; ++i) {
            const S* gi = g + i * d;
            for (std::size_t j = 0; j < n; ++j) {
                const S* row = table + labels[i * n + j] * d;
                S s(0);
                for (std::size_t p = 0; p < d; ++p) s += gi[p] * row[p];
                da[i * n + j] += s;
            }
        }
    }
    if (dtable) serial::relation_values_bwd(g, a, table, labels, nullptr, dtable, n, d, n_labels);
}

} // namespace omp

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

namespace {
inline bool go_parallel(std::size_t work) {
    return parallel_enabled() && work >= kMinParallelWork;
}
} // namespace

template <class S>
void matmul_nn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
    if (go_parallel(m * k * n))
        omp::matmul_nn(a, b, c, m, k, n, acc);
    else
        serial::matmul_nn(a, b, c, m, k, n, acc);
}

template <class S>
void matmul_nt(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
    if (go_parallel(m * k * n))
        omp::matmul_nt(a, b, c, m, k, n, acc);
    else
        serial::matmul_nt(a, b, c, m, k, n, acc);
}

template <class S>
void matmul_tn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc) {
    if (go_parallel(m * k * n))
        omp::matmul_tn(a, b, c, m, k, n, acc);
    else
        serial::matmul_tn(a, b, c, m, k, n, acc);
}

template <class S>
void add(const S* a, const S* b, S* c, std::size_t n) {
    if (go_parallel(n))
        omp::add(a, b, c, n);
    else
        serial::add(a, b, c, n);
}

template <class S>
void axpy(S alpha, const S* x, S* y, std::size_t n) {
    if (go_parallel(n))
        omp::axpy(alpha, x, y, n);
    else
        serial::axpy(alpha, x, y, n);
}

template <class S>
void scale(const S* x, S alpha, S* y, std::size_t n) {
    if (go_parallel(n))
        omp::scale(x, alpha, y, n);
    else
        serial::scale(x, alpha, y, n);
}

template <class S>
void hadamard(const S* a, const S* b, S* c, std::size_t n) {
    if (go_parallel(n))
        omp::hadamard(a, b, c, n);
    else
        serial::hadamard(a, b, c, n);
}

template <class S>
void relu_fwd(const S* x, S* y, std::size_t n) {
    if (go_parallel(n))
        omp::relu_fwd(x, y, n);
    else
        serial::relu_fwd(x, y, n);
}

template <class S>
void relu_bwd(const S* x, const S* dy, S* dx, std::size_t n) {
    if (go_parallel(n))
        omp::relu_bwd(x, dy, dx, n);
    else
        serial::relu_bwd(x, dy, dx, n);
}

template <class S>
S sum(const S* x, std::size_t n) {
    if (go_parallel(n)) return omp::sum(x, n);
    return serial::sum(x, n);
}

template <class S>
bool softmax_rows(const S* x, S* y, std::size_t rows, std::size_t cols, const std::uint8_t* mask) {
    if (go_parallel(rows * cols))
        return omp::softmax_rows(x, y, rows, cols, mask);
    return serial::softmax_rows(x, y, rows, cols, mask);
}

template <class S>
void softmax_rows_bwd(const S* y, const S* dy, S* dx, std::size_t rows, std::size_t cols) {
    if (go_parallel(rows * cols))
        omp::softmax_rows_bwd(y, dy, dx, rows, cols);
    else
        serial::softmax_rows_bwd(y, dy, dx, rows, cols);
}

template <class S>
void layer_norm_fwd(const S* x, const S* gain, const S* bias, S* y, S* xhat, S* inv_std,
                    std::size_t rows, std::size_t d, S eps) {
    if (go_parallel(rows * d))
        omp::layer_norm_fwd(x, gain, bias, y, xhat, inv_std, rows, d, eps);
    else
        serial::layer_norm_fwd(x, gain, bias, y, xhat, inv_std, rows, d, eps);
}

template <class S>
void layer_norm_bwd(const S* xhat, const S* inv_std, const S* gain, const S* dy,
                    S* dx, S* dgain, S* dbias, std::size_t rows, std::size_t d) {
    if (go_parallel(rows * d))
        omp::layer_norm_bwd(xhat, inv_std, gain, dy, dx, dgain, dbias, rows, d);
    else
        serial::layer_norm_bwd(xhat, inv_std, gain, dy, dx, dgain, dbias, rows, d);
}

template <class S>
void max_over_rows(const S* x, S* out, std::size_t* argmax, std::size_t rows, std::size_t cols) {
    if (go_parallel(rows * cols))
        omp::max_over_rows(x, out, argmax, rows, cols);
    else
        serial::max_over_rows(x, out, argmax, rows, cols);
}

template <class S>
void relation_logits_fwd(const S* q, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels) {
    if (go_parallel(n * n * d))
        omp::relation_logits_fwd(q, table, labels, out, n, d, n_labels);
    else
        serial::relation_logits_fwd(q, table, labels, out, n, d, n_labels);
}

template <class S>
void relation_logits_bwd(const S* g, const S* q, const S* table, const std::uint8_t* labels,
                         S* dq, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels) {
    if (go_parallel(n * n * d))
        omp::relation_logits_bwd(g, q, table, labels, dq, dtable, n, d, n_labels);
    else
        serial::relation_logits_bwd(g, q, table, labels, dq, dtable, n, d, n_labels);
}

template <class S>
void relation_values_fwd(const S* a, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels) {
    if (go_parallel(n * n * d))
        omp::relation_values_fwd(a, table, labels, out, n, d, n_labels);
    else
        serial::relation_values_fwd(a, table, labels, out, n, d, n_labels);
}

template <class S>
void relation_values_bwd(const S* g, const S* a, const S* table, const std::uint8_t* labels,
                         S* da, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels) {
    if (go_parallel(n * n * d))
        omp::relation_values_bwd(g, a, table, labels, da, dtable, n, d, n_labels);
    else
        serial::relation_values_bwd(g, a, table, labels, da, dtable, n, d, n_labels);
}

// ---------------------------------------------------------------------------
// explicit instantiations (float for training, double for gradient checks)
// ---------------------------------------------------------------------------

#define PLAN_INSTANTIATE_KERNELS(NS, S)                                                            \
    template void NS::matmul_nn<S>(const S*, const S*, S*, std::size_t, std::size_t, std::size_t, \
                                   bool);                                                          \
    template void NS::matmul_nt<S>(const S*, const S*, S*, std::size_t, std::size_t, std::size_t, \
                                   bool);                                                          \
    template void NS::matmul_tn<S>(const S*, const S*, S*, std::size_t, std::size_t, std::size_t, \
                                   bool);                                                          \
    template void NS::add<S>(const S*, const S*, S*, std::size_t);                                 \
    template void NS::axpy<S>(S, const S*, S*, std::size_t);                                       \
    template void NS::scale<S>(const S*, S, S*, std::size_t);                                      \
    template void NS::hadamard<S>(const S*, const S*, S*, std::size_t);                            \
    template void NS::relu_fwd<S>(const S*, S*, std::size_t);                                      \
    template void NS::relu_bwd<S>(const S*, const S*, S*, std::size_t);                            \
    template S NS::sum<S>(const S*, std::size_t);                                                  \
    template bool NS::softmax_rows<S>(const S*, S*, std::size_t, std::size_t,                     \
                                      const std::uint8_t*);                                        \
    template void NS::softmax_rows_bwd<S>(const S*, const S*, S*, std::size_t, std::size_t);      \
    template void NS::layer_norm_fwd<S>(const S*, const S*, const S*, S*, S*, S*, std::size_t,    \
                                        std::size_t, S);                                           \
    template void NS::layer_norm_bwd<S>(const S*, const S*, const S*, const S*, S*, S*, S*,       \
                                        std::size_t, std::size_t);                                 \
    template void NS::max_over_rows<S>(const S*, S*, std::size_t*, std::size_t, std::size_t);     \
    template void NS::relation_logits_fwd<S>(const S*, const S*, const std::uint8_t*, S*,         \
                                             std::size_t, std::size_t, std::size_t);               \
    template void NS::relation_logits_bwd<S>(const S*, const S*, const S*, const std::uint8_t*,   \
                                             S*, S*, std::size_t, std::size_t, std::size_t);       \
    template void NS::relation_values_fwd<S>(const S*, const S*, const std::uint8_t*, S*,         \
                                             std::size_t, std::size_t, std::size_t);               \
    template void NS::relation_values_bwd<S>(const S*, const S*, const S*, const std::uint8_t*,   \
                                             S*, S*, std::size_t, std::size_t, std::size_t);

} // namespace plan::kernels

namespace plan::kernels {
PLAN_INSTANTIATE_KERNELS(serial, float)
PLAN_INSTANTIATE_KERNELS(serial, double)
PLAN_INSTANTIATE_KERNELS(omp, float)
PLAN_INSTANTIATE_KERNELS(omp, double)
} // namespace plan::kernels

// The dispatchers live directly in plan::kernels.
namespace plan {
#define PLAN_INSTANTIATE_DISPATCH(S)                                                               \
    template void kernels::matmul_nn<S>(const S*, const S*, S*, std::size_t, std::size_t,          \
                                        std::size_t, bool);                                        \
    template void kernels::matmul_nt<S>(const S*, const S*, S*, std::size_t, std::size_t,          \
                                        std::size_t, bool);                                        \
    template void kernels::matmul_tn<S>(const S*, const S*, S*, std::size_t, std::size_t,          \
                                        std::size_t, bool);                                        \
    template void kernels::add<S>(const S*, const S*, S*, std::size_t);                            \
    template void kernels::axpy<S>(S, const S*, S*, std::size_t);                                  \
    template void kernels::scale<S>(const S*, S, S*, std::size_t);                                 \
    template void kernels::hadamard<S>(const S*, const S*, S*, std::size_t);                       \
    template void kernels::relu_fwd<S>(const S*, S*, std::size_t);                                 \
    template void kernels::relu_bwd<S>(const S*, const S*, S*, std::size_t);                       \
    template S kernels::sum<S>(const S*, std::size_t);                                             \
    template bool kernels::softmax_rows<S>(const S*, S*, std::size_t, std::size_t,                 \
                                           const std::uint8_t*);                                   \
    template void kernels::softmax_rows_bwd<S>(const S*, const S*, S*, std::size_t, std::size_t);  \
    template void kernels::layer_norm_fwd<S>(const S*, const S*, const S*, S*, S*, S*,             \
                                             std::size_t, std::size_t, S);                         \
    template void kernels::layer_norm_bwd<S>(const S*, const S*, const S*, const S*, S*, S*, S*,   \
                                             std::size_t, std::size_t);                            \
    template void kernels::max_over_rows<S>(const S*, S*, std::size_t*, std::size_t, std::size_t); \
    template void kernels::relation_logits_fwd<S>(const S*, const S*, const std::uint8_t*, S*,     \
                                                  std::size_t, std::size_t, std::size_t);          \
    template void kernels::relation_logits_bwd<S>(const S*, const S*, const S*,                    \
                                                  const std::uint8_t*, S*, S*, std::size_t,        \
                                                  std::size_t, std::size_t);                       \
    template void kernels::relation_values_fwd<S>(const S*, const S*, const std::uint8_t*, S*,     \
                                                  std::size_t, std::size_t, std::size_t);          \
    template void kernels::relation_values_bwd<S>(const S*, const S*, const S*,                    \
                                                  const std::uint8_t*, S*, S*, std::size_t,        \
                                                  std::size_t, std::size_t);

PLAN_INSTANTIATE_DISPATCH(float)
PLAN_INSTANTIATE_DISPATCH(double)
} // namespace plan
