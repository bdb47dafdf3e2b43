#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace pyrtex {

// Worker count used by the data-parallel loops. 0 selects hardware concurrency.
// Default is 1.
void set_num_threads(int n);
int num_threads();

// Runs fn(y0, y1) over disjoint contiguous blocks of [0, rows). Every row is
// produced by exactly one worker and workers never share output, so results
// are independent of the thread count.
template <typename Fn>
void parallel_rows(int rows, Fn&& fn) {
    const int nt = std::min(num_threads(), std::max(rows, 1));
    if (nt <= 1) {
        fn(0, rows);
        return;
    }
    const int chunk = (rows + nt - 1) / nt;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(nt) - 1);
    for (int t = 1; t < nt; ++t) {
        const int y0 = t * chunk;
        const int y1 = std::min(rows, y0 + chunk);
        if (y0 >= y1) break;
        workers.emplace_back([&fn, y0, y1] { fn(y0, y1); });
    }
    fn(0, std::min(rows, chunk));
    for (auto& w : workers) w.join();
}

}  // namespace pyrtex
