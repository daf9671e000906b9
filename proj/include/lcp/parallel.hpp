// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/parallel.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lcp
{
//! Evaluate fn(i) for i in [0, n) on up to `threads` workers. Results are
//! stored by index, so the output never depends on scheduling.
template<class Fn>
auto parallel_map(std::size_t n, unsigned threads, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))>
{
    using R = decltype(fn(std::size_t{}));
    std::vector<R> out(n);
    unsigned const workers
        = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
        {
            pool.emplace_back([&, w] {
                try
                {
                    for (std::size_t i = next++; i < n; i = next++)
                        out[i] = fn(i);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto const& e : errors)
    {
        if (e)
            std::rethrow_exception(e);
    }
    return out;
}
}  // namespace lcp
