#include <cstdlib>
#include <string_view>

#include "tables.hpp"

namespace helios::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(HELIOS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable& select_table() {
    if (const char* env = std::getenv("HELIOS_KERNELS"); env && std::string_view{env} == "scalar") {
        return scalar_table();
    }
    const auto tables = available_tables();
    return *tables.back();
}

}  // namespace

std::vector<const KernelTable*> available_tables() {
    std::vector<const KernelTable*> out{&scalar_table()};
#if defined(HELIOS_HAVE_AVX2_KERNELS)
    if (cpu_has_avx2()) out.push_back(&avx2_table());
#endif
#if defined(HELIOS_HAVE_NEON_KERNELS)
    out.push_back(&neon_table());  // NEON is baseline on AArch64.
#endif
    return out;
}

const KernelTable& active_table() {
    static const KernelTable& table = select_table();
    return table;
}

}  // namespace helios::kernels
