// Copyright 2026 The qtradeoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtradeoff/parallel.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qtradeoff {

namespace {

std::atomic<unsigned> g_default_workers{0};

struct Moments {
    double n = 0;
    double mean = 0;
    double m2 = 0;
};

Moments merge(const Moments &a, const Moments &b) {
    if (a.n == 0) {
        return b;
    }
    if (b.n == 0) {
        return a;
    }
    Moments out;
    out.n = a.n + b.n;
    double delta = b.mean - a.mean;
    out.mean = a.mean + delta * b.n / out.n;
    out.m2 = a.m2 + b.m2 + delta * delta * a.n * b.n / out.n;
    return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

unsigned default_workers() {
    unsigned w = g_default_workers.load();
    if (w == 0) {
        w = std::max(1u, std::thread::hardware_concurrency());
    }
    return w;
}

void set_default_workers(unsigned workers) {
    g_default_workers.store(workers);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body, unsigned workers) {
    if (workers == 0) {
        workers = default_workers();
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (unsigned w = 1; w < workers; w++) {
        threads.emplace_back(run);
    }
    run();
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

MonteCarloEstimate monte_carlo(std::size_t samples, std::uint64_t seed, const std::function<double(Rng &)> &sample,
                               std::size_t chunk_size, unsigned workers) {
    if (samples == 0) {
        return {};
    }
    chunk_size = std::max<std::size_t>(chunk_size, 1);
    const std::size_t chunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<Moments> partial(chunks);
    parallel_for(
        chunks,
        [&](std::size_t k) {
            Rng rng = make_rng(seed, k);
            std::size_t begin = k * chunk_size;
            std::size_t end = std::min(samples, begin + chunk_size);
            Moments m;
            for (std::size_t i = begin; i < end; i++) {
                double v = sample(rng);
                m.n += 1;
                double delta = v - m.mean;
                m.mean += delta / m.n;
                m.m2 += delta * (v - m.mean);
            }
            partial[k] = m;
        },
        workers);

    Moments total;
    for (const auto &m : partial) {
        total = merge(total, m);
    }
    MonteCarloEstimate out;
    out.mean = total.mean;
    out.samples = samples;
    out.std_error = samples > 1 ? std::sqrt(total.m2 / (total.n - 1) / total.n) : 0.0;
    return out;
}

}  // namespace qtradeoff
