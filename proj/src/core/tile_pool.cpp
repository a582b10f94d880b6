// Copyright 2026 The edrstream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edr/tile_pool.hpp"

namespace edr {

TilePool::TilePool(unsigned threads) {
    for (unsigned i = 1; i < threads; ++i) {
        workers_.emplace_back([this, i] { worker_loop(i); });
    }
}

TilePool::~TilePool() {
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
    }
    start_cv_.notify_all();
    workers_.clear();  // join before the mutex goes away
}

void TilePool::run(std::size_t tiles, const std::function<void(std::size_t)>& job) {
    if (tiles == 0) return;
    if (workers_.empty() || tiles == 1) {
        for (std::size_t t = 0; t < tiles; ++t) job(t);
        return;
    }
    {
        std::lock_guard lock(mu_);
        job_ = &job;
        tiles_ = tiles;
        next_tile_ = 0;
        pending_ = tiles;
        error_ = nullptr;
        ++generation_;
    }
    start_cv_.notify_all();

    // The caller works too, pulling tiles from the same counter.
    for (;;) {
        std::size_t t;
        {
            std::lock_guard lock(mu_);
            if (next_tile_ >= tiles_) break;
            t = next_tile_++;
        }
        std::exception_ptr err;
        try {
            job(t);
        } catch (...) {
            err = std::current_exception();
        }
        std::lock_guard lock(mu_);
        if (err && !error_) error_ = err;
        --pending_;
    }

    std::unique_lock lock(mu_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
    if (error_) std::rethrow_exception(error_);
}

void TilePool::worker_loop(unsigned) {
    std::uint64_t seen = 0;
    std::unique_lock lock(mu_);
    for (;;) {
        start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
        if (stopping_) return;
        seen = generation_;
        while (job_ != nullptr && next_tile_ < tiles_) {
            const std::size_t t = next_tile_++;
            const auto* job = job_;
            lock.unlock();
            std::exception_ptr err;
            try {
                (*job)(t);
            } catch (...) {
                err = std::current_exception();
            }
            lock.lock();
            if (err && !error_) error_ = err;
            if (--pending_ == 0) done_cv_.notify_all();
        }
    }
}

}  // namespace edr
