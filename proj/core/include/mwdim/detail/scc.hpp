#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace mwdim::detail {

// Iterative Tarjan. `for_each_successor(v, f)` must call f(w) for every arc v->w.
// Returns the component index of every vertex; `component_count` receives the total.
template <class ForEachSuccessor>
std::vector<std::uint32_t> strong_components(std::size_t n, ForEachSuccessor&& for_each_successor,
                                             std::size_t* component_count = nullptr) {
    constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();

    std::vector<std::vector<std::uint32_t>> succ(n);
    for (std::size_t v = 0; v < n; ++v) {
        for_each_successor(v, [&](std::size_t w) { succ[v].push_back(static_cast<std::uint32_t>(w)); });
    }

    std::vector<std::uint32_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<char> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::size_t>> call; // (vertex, next successor slot)
    std::uint32_t next_index = 0;
    std::uint32_t next_comp = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(static_cast<std::uint32_t>(root), 0);
        while (!call.empty()) {
            auto& [v, slot] = call.back();
            if (slot == 0 && index[v] == unvisited) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (slot < succ[v].size()) {
                const std::uint32_t w = succ[v][slot++];
                if (index[w] == unvisited) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = next_comp;
                } while (w != v);
                ++next_comp;
            }
            const std::uint32_t finished = v;
            call.pop_back();
            if (!call.empty()) {
                const std::uint32_t parent = call.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    if (component_count) *component_count = next_comp;
    return comp;
}

} // namespace mwdim::detail
