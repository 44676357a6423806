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

#ifndef FUSESGM_PARALLEL_HPP
#define FUSESGM_PARALLEL_HPP

namespace fusesgm {

/// Number of workers used by parallel stages. Defaults to the hardware
/// concurrency, capped by the FUSION_THREADS environment variable.
int worker_count();

/// Overrides the worker count for this process (0 restores the default).
void set_worker_count(int n);

}  // namespace fusesgm

#endif  // FUSESGM_PARALLEL_HPP
