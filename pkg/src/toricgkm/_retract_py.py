"""Pure-Python retraction search kernel.

The face lattice arrives flattened: ``face_masks[f]`` is the bitmask of
vertices of face ``f``.  A subcomplex is a bitset over face indices.  The
compiled kernel in ``_retract_core.pyx`` implements the same contract.
"""

from typing import List, Optional, Sequence, Tuple

Step = Tuple[int, int]


def search(
    face_masks: Sequence[int],
    nverts: int,
    allowed: Optional[bytes] = None,
    cap: int = 0,
    budget: int = 0,
) -> Tuple[List[List[Step]], int, bool]:
    """Depth-first enumeration of retraction sequences.

    Returns ``(sequences, nodes, aborted)``.  Each sequence is a list of
    ``(vertex, face)`` steps.  ``allowed[f * nverts + v]`` gates the step
    removing ``v`` with maximal face ``f``; the final step is never gated.
    ``cap`` stops after that many sequences and ``budget`` after that many
    expanded steps (0 disables either).
    """
    nfaces = len(face_masks)
    star: List[List[int]] = [[] for _ in range(nverts)]
    for f, mask in enumerate(face_masks):
        for v in range(nverts):
            if mask >> v & 1:
                star[v].append(f)
    star_bits = [sum(1 << f for f in fs) for fs in star]

    results: List[List[Step]] = []
    path: List[Step] = []
    nodes = 0
    aborted = False

    def free_face(B: int, v: int) -> int:
        acc = 0
        for f in star[v]:
            if B >> f & 1:
                acc |= face_masks[f]
        for f in star[v]:
            if B >> f & 1 and face_masks[f] == acc:
                return f
        return -1

    def dfs(B: int, remaining: int, left: int) -> bool:
        # returns True to stop the whole search
        nonlocal nodes, aborted
        if left == 0:
            results.append(list(path))
            return 0 < cap <= len(results)
        for v in range(nverts):
            if not remaining >> v & 1:
                continue
            f = free_face(B, v)
            if f < 0:
                continue
            if allowed is not None and left > 1 and not allowed[f * nverts + v]:
                continue
            nodes += 1
            if budget and nodes > budget:
                aborted = True
                return True
            path.append((v, f))
            stop = dfs(B & ~star_bits[v], remaining & ~(1 << v), left - 1)
            path.pop()
            if stop:
                return True
        return False

    dfs((1 << nfaces) - 1, (1 << nverts) - 1, nverts)
    return results, nodes, aborted
