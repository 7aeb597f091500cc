#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace loopwalk {

struct SccResult {
    int count = 0;
    std::vector<int> comp;
};

// Iterative Tarjan. Components are numbered in reverse topological order of
// the condensation: every edge u -> v satisfies comp[u] >= comp[v].
inline SccResult strongly_connected_components(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    SccResult result;
    result.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> call;
    int next_index = 0;

    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        call.emplace_back(start, 0);
        while (!call.empty()) {
            int v = call.back().first;
            std::size_t ci = call.back().second;
            if (ci == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (ci < adj[v].size()) {
                call.back().second++;
                int w = adj[v][ci];
                if (index[w] == -1) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        result.comp[w] = result.count;
                        if (w == v) break;
                    }
                    result.count++;
                }
                call.pop_back();
                if (!call.empty()) {
                    int parent = call.back().first;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
    return result;
}

} // namespace loopwalk
