#pragma once

#include <cstddef>
#include <cstdint>

// Dense inner loops behind the tensor ops. Every kernel exists twice: a plain
// serial reference under kernels::serial and an OpenMP version under
// kernels::omp. The unqualified functions dispatch on the global execution
// mode; deterministic runs (and the whole test suite) pin it to serial so
// reduction order is fixed. tools/bench_kernels compares the two.
//
// Per-element accumulation order is identical in both variants for the
// matmul/softmax/layer-norm family, so those agree bitwise; only whole-array
// reductions (sum) reassociate under OpenMP.

namespace plan::kernels {

void set_parallel(bool enabled);
bool parallel_enabled();

namespace serial {

// c[m x n] = a[m x k] * b[k x n]          (+= when acc)
template <class S>
void matmul_nn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);

// c[m x n] = a[m x k] * b[n x k]^T        (+= when acc)
template <class S>
void matmul_nt(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);

// c[m x n] = a[k x m]^T * b[k x n]        (+= when acc)
template <class S>
void matmul_tn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);

template <class S>
void add(const S* a, const S* b, S* c, std::size_t n);

// y += alpha * x
template <class S>
void axpy(S alpha, const S* x, S* y, std::size_t n);

template <class S>
void scale(const S* x, S alpha, S* y, std::size_t n);

template <class S>
void hadamard(const S* a, const S* b, S* c, std::size_t n);

template <class S>
void relu_fwd(const S* x, S* y, std::size_t n);

// dx += dy where x > 0
template <class S>
void relu_bwd(const S* x, const S* dy, S* dx, std::size_t n);

template <class S>
S sum(const S* x, std::size_t n);

// Row-wise softmax with max subtraction. mask (nullable, length cols,
// shared by all rows) marks valid columns; invalid columns get weight 0.
// Returns false if some row has no valid column.
template <class S>
bool softmax_rows(const S* x, S* y, std::size_t rows, std::size_t cols, const std::uint8_t* mask);

// dx += dy-through-softmax given forward output y.
template <class S>
void softmax_rows_bwd(const S* y, const S* dy, S* dx, std::size_t rows, std::size_t cols);

// Per-row normalization over the last axis, then gain/bias. Saves the
// normalized values (xhat) and 1/sigma per row for the backward pass.
template <class S>
void layer_norm_fwd(const S* x, const S* gain, const S* bias, S* y, S* xhat, S* inv_std,
                    std::size_t rows, std::size_t d, S eps);

template <class S>
void layer_norm_bwd(const S* xhat, const S* inv_std, const S* gain, const S* dy,
                    S* dx, S* dgain, S* dbias, std::size_t rows, std::size_t d);

// out[j] = max_i x[i][j]; argmax[j] = first row attaining the max.
template <class S>
void max_over_rows(const S* x, S* out, std::size_t* argmax, std::size_t rows, std::size_t cols);

// out[i][j] = dot(q_i, table[labels[i*n+j]]); table is [n_labels x d].
template <class S>
void relation_logits_fwd(const S* q, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels);

template <class S>
void relation_logits_bwd(const S* g, const S* q, const S* table, const std::uint8_t* labels,
                         S* dq, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels);

// out[i] = sum_j a[i][j] * table[labels[i*n+j]]
template <class S>
void relation_values_fwd(const S* a, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels);

template <class S>
void relation_values_bwd(const S* g, const S* a, const S* table, const std::uint8_t* labels,
                         S* da, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels);

} // namespace serial

namespace omp {

template <class S>
void matmul_nn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);
template <class S>
void matmul_nt(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);
template <class S>
void matmul_tn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);
template <class S>
void add(const S* a, const S* b, S* c, std::size_t n);
template <class S>
void axpy(S alpha, const S* x, S* y, std::size_t n);
template <class S>
void scale(const S* x, S alpha, S* y, std::size_t n);
template <class S>
void hadamard(const S* a, const S* b, S* c, std::size_t n);
template <class S>
void relu_fwd(const S* x, S* y, std::size_t n);
template <class S>
void relu_bwd(const S* x, const S* dy, S* dx, std::size_t n);
template <class S>
S sum(const S* x, std::size_t n);
template <class S>
bool softmax_rows(const S* x, S* y, std::size_t rows, std::size_t cols, const std::uint8_t* mask);
template <class S>
void softmax_rows_bwd(const S* y, const S* dy, S* dx, std::size_t rows, std::size_t cols);
template <class S>
void layer_norm_fwd(const S* x, const S* gain, const S* bias, S* y, S* xhat, S* inv_std,
                    std::size_t rows, std::size_t d, S eps);
template <class S>
void layer_norm_bwd(const S* xhat, const S* inv_std, const S* gain, const S* dy,
                    S* dx, S* dgain, S* dbias, std::size_t rows, std::size_t d);
template <class S>
void max_over_rows(const S* x, S* out, std::size_t* argmax, std::size_t rows, std::size_t cols);
template <class S>
void relation_logits_fwd(const S* q, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels);
template <class S>
void relation_logits_bwd(const S* g, const S* q, const S* table, const std::uint8_t* labels,
                         S* dq, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels);
template <class S>
void relation_values_fwd(const S* a, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels);
template <class S>
void relation_values_bwd(const S* g, const S* a, const S* table, const std::uint8_t* labels,
                         S* da, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels);

} // namespace omp

// Dispatching entry points used by the tensor ops.
template <class S>
void matmul_nn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);
template <class S>
void matmul_nt(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);
template <class S>
void matmul_tn(const S* a, const S* b, S* c, std::size_t m, std::size_t k, std::size_t n, bool acc);
template <class S>
void add(const S* a, const S* b, S* c, std::size_t n);
template <class S>
void axpy(S alpha, const S* x, S* y, std::size_t n);
template <class S>
void scale(const S* x, S alpha, S* y, std::size_t n);
template <class S>
void hadamard(const S* a, const S* b, S* c, std::size_t n);
template <class S>
void relu_fwd(const S* x, S* y, std::size_t n);
template <class S>
void relu_bwd(const S* x, const S* dy, S* dx, std::size_t n);
template <class S>
S sum(const S* x, std::size_t n);
template <class S>
bool softmax_rows(const S* x, S* y, std::size_t rows, std::size_t cols, const std::uint8_t* mask);
template <class S>
void softmax_rows_bwd(const S* y, const S* dy, S* dx, std::size_t rows, std::size_t cols);
template <class S>
void layer_norm_fwd(const S* x, const S* gain, const S* bias, S* y, S* xhat, S* inv_std,
                    std::size_t rows, std::size_t d, S eps);
template <class S>
void layer_norm_bwd(const S* xhat, const S* inv_std, const S* gain, const S* dy,
                    S* dx, S* dgain, S* dbias, std::size_t rows, std::size_t d);
template <class S>
void max_over_rows(const S* x, S* out, std::size_t* argmax, std::size_t rows, std::size_t cols);
template <class S>
void relation_logits_fwd(const S* q, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels);
template <class S>
void relation_logits_bwd(const S* g, const S* q, const S* table, const std::uint8_t* labels,
                         S* dq, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels);
template <class S>
void relation_values_fwd(const S* a, const S* table, const std::uint8_t* labels,
                         S* out, std::size_t n, std::size_t d, std::size_t n_labels);
template <class S>
void relation_values_bwd(const S* g, const S* a, const S* table, const std::uint8_t* labels,
                         S* da, S* dtable, std::size_t n, std::size_t d, std::size_t n_labels);

} // namespace plan::kernels
