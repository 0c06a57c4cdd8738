#pragma once

#include "helios/kernels.hpp"

namespace helios::kernels {

#if defined(HELIOS_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table();
#endif
#if defined(HELIOS_HAVE_NEON_KERNELS)
const KernelTable& neon_table();
#endif

}  // namespace helios::kernels
