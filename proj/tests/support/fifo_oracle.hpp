#pragma once

// Brute-force launch timeline, written independently of the simulator. Times
// are integer microseconds. The central filesystem is modelled one request at
// a time: requests are served strictly in arrival order, ties broken by
// (node position, process number), each taking a fixed per-request service
// time. It only agrees with the simulator when that service time is a whole
// number of microseconds (e.g. mu = 20000 -> 50 us).

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

namespace oracle {

struct Params {
    int fanout = 32;
    std::int64_t hop_us = 10'000;
    std::int64_t launcher_us = 50'000;
    std::int64_t fork_us = 1'000;
    std::int64_t load_us = 100'000;
    int requests = 3;
    std::int64_t per_request_us = 50;
};

struct Proc {
    int node = 0;  // 1-based position in the job's node list
    int proc = 0;  // 1-based within the node
    std::int64_t enqueue_us = 0;
    std::int64_t ready_us = 0;
};

// Level of each node when the dispatch tree is filled breadth first: level 1
// holds `fanout` nodes, level 2 holds fanout^2, and so on.
inline std::vector<int> tree_levels(int nodes, int fanout) {
    std::vector<int> level;
    std::int64_t room = fanout;
    int l = 1;
    while (static_cast<int>(level.size()) < nodes) {
        for (std::int64_t k = 0; k < room && static_cast<int>(level.size()) < nodes; ++k) {
            level.push_back(l);
        }
        room *= fanout;
        ++l;
    }
    return level;
}

inline std::vector<Proc> tree_launch(int nodes, int procs, const Params& p) {
    const auto level = tree_levels(nodes, p.fanout);
    std::vector<Proc> out;
    for (int n = 1; n <= nodes; ++n) {
        const std::int64_t ready_launcher = level[n - 1] * p.hop_us + p.launcher_us;
        for (int j = 1; j <= procs; ++j) {
            out.push_back(Proc{n, j, ready_launcher + j * p.fork_us + p.load_us, 0});
        }
    }
    std::vector<std::size_t> order(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(out[a].enqueue_us, out[a].node, out[a].proc) <
               std::tie(out[b].enqueue_us, out[b].node, out[b].proc);
    });
    // Walk the request stream one request at a time.
    std::int64_t clock = 0;
    for (auto i : order) {
        for (int r = 0; r < p.requests; ++r) {
            clock = std::max(clock, out[i].enqueue_us) + p.per_request_us;
        }
        out[i].ready_us = clock;
    }
    return out;
}

} // namespace oracle
