"""Dinic max-flow / min-cut on small graphs with float capacities."""

from collections import deque

EPS = 1e-12


class FlowNetwork:
    def __init__(self, n):
        self.n = n
        self.head = [[] for _ in range(n)]  # per node: indices into edge arrays
        self.to = []
        self.cap = []

    def add_edge(self, u, v, cap_uv, cap_vu=0.0):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(float(cap_uv))
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(float(cap_vu))

    def _bfs_levels(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if level[v] < 0 and self.cap[e] > EPS:
                    level[v] = level[u] + 1
                    q.append(v)
        return level if level[t] >= 0 else None

    def _dfs_push(self, s, t, level, it):
        # Iterative blocking-flow DFS with per-node edge cursors.
        total = 0.0
        while True:
            path = []
            u = s
            while u != t:
                advanced = False
                while it[u] < len(self.head[u]):
                    e = self.head[u][it[u]]
                    v = self.to[e]
                    if self.cap[e] > EPS and level[v] == level[u] + 1:
                        path.append(e)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        return total
                    level[u] = -1  # dead end; prune
                    u = self.to[path[-1] ^ 1]
                    path.pop()
            bottleneck = min(self.cap[e] for e in path)
            for e in path:
                self.cap[e] -= bottleneck
                self.cap[e ^ 1] += bottleneck
            total += bottleneck

    def max_flow(self, s, t):
        flow = 0.0
        while True:
            level = self._bfs_levels(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            flow += self._dfs_push(s, t, level, it)

    def source_side(self, s):
        """Nodes reachable from s in the residual graph (the minimal cut side)."""
        seen = [False] * self.n
        seen[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if not seen[v] and self.cap[e] > EPS:
                    seen[v] = True
                    q.append(v)
        return seen
