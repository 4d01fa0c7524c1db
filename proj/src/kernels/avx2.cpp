#include "fluxlogic/kernels/dispatch.hpp"

// AVX2 variant of block_energies. Four assignment indices per iteration, one
// lane each; the arithmetic replays the scalar kernel's operation sequence
// (add/mul only, no FMA) so results match the scalar backend bit for bit.
// The sub-4 tail is delegated to the scalar kernel.

#if defined(FLUXLOGIC_HAVE_AVX2)

#include <immintrin.h>

namespace fluxlogic::kernels {
namespace {

// Bit `shift` of each lane's index, as an all-ones / all-zeros double mask.
inline __m256d bit_mask_pd(__m256i idx, std::uint32_t shift) {
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i bits =
        _mm256_and_si256(_mm256_srl_epi64(idx, _mm_cvtsi32_si128(static_cast<int>(shift))), one);
    return _mm256_castsi256_pd(_mm256_cmpeq_epi64(bits, one));
}

}  // namespace

void block_energies_avx2(const CompiledNetwork& cn, EnergyModel model, double tol,
                         std::uint64_t first, std::uint32_t count, double* out) {
    const std::size_t rows = cn.rows();
    const __m256d ones = _mm256_set1_pd(1.0);
    const __m256d minus_ones = _mm256_set1_pd(-1.0);
    const __m256d zeros = _mm256_setzero_pd();
    const __m256d phi0v = _mm256_set1_pd(cn.phi0);
    const __m256d tolv = _mm256_set1_pd(tol);

    std::uint32_t k = 0;
    for (; k + 4 <= count; k += 4) {
        const std::uint64_t base = first + k;
        const __m256i idx = _mm256_set_epi64x(
            static_cast<long long>(base + 3), static_cast<long long>(base + 2),
            static_cast<long long>(base + 1), static_cast<long long>(base));
        __m256d acc = zeros;
        for (std::size_t i = 0; i < rows; ++i) {
            __m256d flux = _mm256_set1_pd(cn.row_base[i]);
            for (std::uint32_t t = cn.term_begin[i]; t < cn.term_begin[i + 1]; ++t) {
                const __m256d m = bit_mask_pd(idx, cn.bit_of_rank(cn.term_rank[t]));
                const __m256d sigma = _mm256_blendv_pd(ones, minus_ones, m);
                flux = _mm256_add_pd(flux,
                                     _mm256_mul_pd(_mm256_set1_pd(cn.term_strength[t]), sigma));
            }
            const __m256d inv2lv = _mm256_set1_pd(cn.row_inv2l[i]);
            const bool free_own = cn.row_own_rank[i] >= 0;
            __m256d ownm = zeros;
            if (free_own)
                ownm = bit_mask_pd(idx, cn.bit_of_rank(static_cast<std::uint32_t>(
                                            cn.row_own_rank[i])));
            if (model == EnergyModel::quadratic) {
                __m256d target;
                if (free_own)
                    target = _mm256_blendv_pd(zeros, phi0v, ownm);
                else
                    target = cn.row_own_fixed[i] ? phi0v : zeros;
                const __m256d resid = _mm256_sub_pd(flux, target);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(resid, resid), inv2lv));
            } else {
                const __m256d d0 = flux;
                const __m256d d1 = _mm256_sub_pd(flux, phi0v);
                const __m256d e0 = _mm256_mul_pd(_mm256_mul_pd(d0, d0), inv2lv);
                const __m256d e1 = _mm256_mul_pd(_mm256_mul_pd(d1, d1), inv2lv);
                __m256d own_e, other_e, pen;
                if (free_own) {
                    own_e = _mm256_blendv_pd(e0, e1, ownm);
                    other_e = _mm256_blendv_pd(e1, e0, ownm);
                    pen = _mm256_blendv_pd(_mm256_set1_pd(cn.row_p0[i]),
                                           _mm256_set1_pd(cn.row_p1[i]), ownm);
                } else if (cn.row_own_fixed[i]) {
                    own_e = e1;
                    other_e = e0;
                    pen = _mm256_set1_pd(cn.row_p1[i]);
                } else {
                    own_e = e0;
                    other_e = e1;
                    pen = _mm256_set1_pd(cn.row_p0[i]);
                }
                const __m256d cmp =
                    _mm256_cmp_pd(own_e, _mm256_add_pd(other_e, tolv), _CMP_GT_OQ);
                const __m256d mm = _mm256_and_pd(cmp, ones);
                acc = _mm256_add_pd(acc, _mm256_add_pd(mm, pen));
            }
        }
        _mm256_storeu_pd(out + k, acc);
    }
    if (k < count) block_energies_scalar(cn, model, tol, first + k, count - k, out + k);
}

}  // namespace fluxlogic::kernels

#else  // !FLUXLOGIC_HAVE_AVX2

#include <stdexcept>

namespace fluxlogic::kernels {

void block_energies_avx2(const CompiledNetwork&, EnergyModel, double, std::uint64_t,
                         std::uint32_t, double*) {
    throw std::runtime_error("AVX2 backend was not built on this platform");
}

}  // namespace fluxlogic::kernels

#endif
