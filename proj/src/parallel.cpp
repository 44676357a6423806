/*
Copyright 2026 The fusesgm Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "fusesgm/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace fusesgm {

namespace {

std::atomic<int> g_override{0};

int default_workers()
{
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1)
        n = 1;
    if (const char* env = std::getenv("FUSION_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n)
            n = cap;
    }
    return n;
}

}  // namespace

int worker_count()
{
    const int forced = g_override.load(std::memory_order_relaxed);
    if (forced > 0)
        return forced;
    static const int detected = default_workers();
    return detected;
}

void set_worker_count(int n)
{
    g_override.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

}  // namespace fusesgm
