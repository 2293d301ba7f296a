#include "logposit/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

namespace logposit {

double SeededRng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = next_unit();
    while (u1 == 0.0) {
        u1 = next_unit();
    }
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
}

int resolve_thread_count(int threads) {
    if (threads > 0) {
        return threads;
    }
    if (const char* env = std::getenv("LOGPOSIT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace logposit
