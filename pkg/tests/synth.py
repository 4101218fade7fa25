"""Deterministic synthetic corpus: 300x200 images with known masks."""

import numpy as np

WIDTH, HEIGHT = 300, 200

# background / foreground color pairs with strong CIELAB contrast
_BG_COLORS = [
    (70, 110, 150), (60, 60, 70), (150, 150, 140), (40, 90, 60),
    (120, 100, 160), (90, 90, 90), (30, 50, 110), (170, 140, 110),
]
_FG_COLORS = [
    (230, 80, 40), (240, 210, 60), (220, 60, 160), (250, 250, 250),
    (20, 200, 220), (200, 30, 30), (240, 160, 30), (60, 230, 80),
]


def _rect(cx, cy, hw, hh):
    mask = np.zeros((HEIGHT, WIDTH), bool)
    mask[max(0, cy - hh):min(HEIGHT, cy + hh), max(0, cx - hw):min(WIDTH, cx + hw)] = True
    return mask


def _disc(cx, cy, r):
    yy, xx = np.mgrid[0:HEIGHT, 0:WIDTH]
    return (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r


def _ellipse(cx, cy, rx, ry):
    yy, xx = np.mgrid[0:HEIGHT, 0:WIDTH]
    return ((xx - cx) / rx) ** 2 + ((yy - cy) / ry) ** 2 <= 1.0


def _uniform_bg(color):
    img = np.zeros((HEIGHT, WIDTH, 3), np.uint8)
    img[:, :] = color
    return img


def _gradient_bg(c0, c1, axis):
    c0 = np.asarray(c0, np.float64)
    c1 = np.asarray(c1, np.float64)
    n = WIDTH if axis == 1 else HEIGHT
    t = np.linspace(0.0, 1.0, n)
    ramp = c0[np.newaxis, :] + t[:, np.newaxis] * (c1 - c0)[np.newaxis, :]
    if axis == 1:
        img = np.broadcast_to(ramp[np.newaxis, :, :], (HEIGHT, WIDTH, 3))
    else:
        img = np.broadcast_to(ramp[:, np.newaxis, :], (HEIGHT, WIDTH, 3))
    return np.rint(img).astype(np.uint8)


def make_corpus():
    """Return a list of (name, rgb, gt) with 20 entries.

    Mix of uniform and gradient backgrounds, single and double shapes; the
    image named 'border_bottom' has its object flush with the bottom edge.
    """
    rng = np.random.default_rng(20240817)
    corpus = []

    def jit(lo, hi):
        return int(rng.integers(lo, hi))

    # 8 uniform-background single shapes
    shapes = [
        _rect(150, 100, 45, 35),
        _disc(135, 90, 42),
        _ellipse(160, 105, 55, 32),
        _rect(120, 110, 35, 48),
        _disc(170, 95, 36),
        _ellipse(140, 85, 38, 50),
        _rect(165, 90, 52, 28),
        _disc(145, 115, 45),
    ]
    for k, mask in enumerate(shapes):
        img = _uniform_bg(_BG_COLORS[k])
        img[mask] = _FG_COLORS[k]
        corpus.append((f"uni_{k}", img, mask))

    # 5 gradient-background single shapes
    grads = [
        ((60, 80, 120), (110, 130, 170), 1),
        ((140, 130, 110), (90, 80, 70), 0),
        ((50, 70, 60), (90, 110, 100), 1),
        ((100, 100, 130), (140, 140, 170), 0),
        ((80, 60, 50), (120, 100, 90), 1),
    ]
    gshapes = [
        _disc(150 + jit(-20, 20), 100 + jit(-15, 15), 40),
        _rect(150 + jit(-20, 20), 100 + jit(-15, 15), 42, 34),
        _ellipse(150 + jit(-20, 20), 100 + jit(-15, 15), 50, 30),
        _disc(150 + jit(-20, 20), 100 + jit(-15, 15), 38),
        _rect(150 + jit(-20, 20), 100 + jit(-15, 15), 36, 44),
    ]
    for k, ((c0, c1, axis), mask) in enumerate(zip(grads, gshapes)):
        img = _gradient_bg(c0, c1, axis).copy()
        img[mask] = _FG_COLORS[k]
        corpus.append((f"grad_{k}", img, mask))

    # 6 double shapes (same color within an image, near-symmetric placement)
    for k in range(6):
        bg = _BG_COLORS[(k + 2) % len(_BG_COLORS)]
        fg = _FG_COLORS[(k + 3) % len(_FG_COLORS)]
        if k < 4:
            img = _uniform_bg(bg)
        else:
            img = _gradient_bg(bg, tuple(min(255, c + 40) for c in bg), k % 2).copy()
        dy = jit(-8, 8)
        if k % 2 == 0:
            m1 = _disc(95, 95 + dy, 30)
            m2 = _disc(205, 105 - dy, 30)
        else:
            m1 = _rect(95, 95 + dy, 27, 27)
            m2 = _rect(205, 105 - dy, 27, 27)
        mask = m1 | m2
        img[mask] = fg
        corpus.append((f"two_{k}", img, mask))

    # 1 shape touching the bottom border
    img = _uniform_bg(_BG_COLORS[0])
    mask = np.zeros((HEIGHT, WIDTH), bool)
    mask[HEIGHT - 70:HEIGHT, 110:190] = True
    img[mask] = _FG_COLORS[0]
    corpus.append(("border_bottom", img, mask))

    assert len(corpus) == 20
    return corpus


def write_corpus(root):
    """Write the corpus as PNG pairs under root/images and root/gt."""
    from graphsal.images import save_gray_u8
    from PIL import Image

    images = root / "images"
    gt = root / "gt"
    images.mkdir(parents=True, exist_ok=True)
    gt.mkdir(parents=True, exist_ok=True)
    names = []
    for name, rgb, mask in make_corpus():
        Image.fromarray(rgb, mode="RGB").save(images / f"{name}.png")
        save_gray_u8(gt / f"{name}.png", mask.astype(np.uint8) * 255)
        names.append(name)
    return names
