#!/usr/bin/env python3
"""Authoring script for the bundled contour library and phoneme inventory.

Writes crates/core/data/contours.json and crates/core/data/phonemes.json.
Coordinates: unit square, x = 0 anterior (lips), x = 1 posterior; y up.

Contact targets copy the touched fixed-structure vertex verbatim so the
solver reproduces an exact zero contact distance at full closure.
"""

import json
import math
import os

from shapely.geometry import LineString, Point

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")

N_BODY = 40
N_TIP = 8
N_DORSUM = 10

NEAR_GAP = 0.02
CONTACT_CURVATURE = 25.0  # gap = k * dx^2 along palate-following target segments


def r(v):
    return round(v, 6)


def rp(pts):
    return [[r(x), r(y)] for x, y in pts]


def resample(pts, n):
    seg = [math.dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
    total = sum(seg)
    out = [pts[0]]
    k = 0
    acc = 0.0
    for i in range(1, n - 1):
        target = total * i / (n - 1)
        while acc + seg[k] < target:
            acc += seg[k]
            k += 1
        t = (target - acc) / seg[k]
        a, b = pts[k], pts[k + 1]
        out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    out.append(pts[-1])
    return out


def y_at(poly, x, pick=min):
    ys = []
    for (x0, y0), (x1, y1) in zip(poly, poly[1:]):
        lo, hi = min(x0, x1), max(x0, x1)
        if lo <= x <= hi and x1 != x0:
            t = (x - x0) / (x1 - x0)
            ys.append(y0 + t * (y1 - y0))
    return pick(ys) if ys else None


# ---------------------------------------------------------------- fixed

upper_teeth = [(0.120, 0.725), (0.113, 0.690), (0.108, 0.655), (0.110, 0.635),
               (0.121, 0.645), (0.128, 0.668), (0.135, 0.700)]

palate_anchors = [(0.135, 0.700), (0.150, 0.722), (0.165, 0.742), (0.185, 0.760),
                  (0.215, 0.778), (0.260, 0.796), (0.310, 0.810), (0.360, 0.817),
                  (0.410, 0.817), (0.460, 0.812), (0.500, 0.805), (0.540, 0.797),
                  (0.580, 0.790)]
hard_palate = [(r(x), r(y)) for x, y in resample(palate_anchors, 31)]

wall_anchors = [(0.660, 0.920), (0.720, 0.860), (0.750, 0.780), (0.765, 0.650),
                (0.770, 0.500), (0.770, 0.350), (0.765, 0.200), (0.760, 0.080)]
rear_wall = [(r(x), r(y)) for x, y in resample(wall_anchors, 12)]


def nearest_vertex(poly, x):
    return min(poly, key=lambda p: abs(p[0] - x))


def palate_y(x):
    if x > hard_palate[-1][0]:
        return hard_palate[-1][1]
    return y_at(hard_palate, x)


# ---------------------------------------------------------------- lips / jaw


def upper_lip(prot, ub):
    p = prot
    return [(0.095, 0.775), (0.065 - 0.5 * p, 0.745), (0.040 - p, 0.715),
            (0.033 - p, 0.690), (0.040 - p, ub + 0.012), (0.060 - p, ub),
            (0.085 - 0.5 * p, ub + 0.002), (0.105, ub + 0.012)]


def lower_lip(jaw, prot, lt):
    p = prot
    return [(0.100, lt - 0.030), (0.080 - 0.5 * p, lt - 0.008), (0.060 - p, lt),
            (0.040 - p, lt - 0.012), (0.032 - p, lt - 0.035), (0.037 - 0.5 * p, lt - 0.065),
            (0.050, jaw - 0.045), (0.062, jaw - 0.075)]


def jaw_teeth(j):
    return [(0.112, j - 0.075), (0.114, j - 0.040), (0.118, j - 0.012), (0.125, j),
            (0.133, j - 0.010), (0.140, j - 0.040), (0.150, j - 0.075), (0.190, j - 0.110),
            (0.300, j - 0.140), (0.450, j - 0.150)]


LARYNX_BASE = [(0.655, 0.250), (0.640, 0.210), (0.655, 0.165), (0.695, 0.145),
               (0.735, 0.155), (0.745, 0.190)]
LARYNX_LOWERING = 0.05


def larynx(dy):
    return [(x, y + dy) for x, y in LARYNX_BASE]


velum_closed = None  # filled below once the wall contact vertex is known
wall_contact = min(rear_wall, key=lambda p: abs(p[1] - 0.785))
velum_closed = [(0.580, 0.790), (0.630, 0.800), (0.690, 0.795), wall_contact,
                (0.735, 0.745), (0.710, 0.715), (0.685, 0.700), (0.655, 0.720),
                (0.620, 0.750), (0.590, 0.775)]
velum_open = [(0.580, 0.790), (0.620, 0.785), (0.655, 0.765), (0.680, 0.735),
              (0.690, 0.700), (0.685, 0.665), (0.670, 0.640), (0.650, 0.660),
              (0.620, 0.720), (0.595, 0.765)]

# ---------------------------------------------------------------- tongue

TONGUE = {
    "a": dict(
        body=[(0.175, 0.505), (0.200, 0.525), (0.250, 0.545), (0.310, 0.555), (0.380, 0.556),
              (0.450, 0.546), (0.520, 0.520), (0.575, 0.470), (0.610, 0.380), (0.615, 0.280),
              (0.600, 0.190)],
        tip=3, dorsum=(3, 8)),
    "i": dict(
        body=[(0.160, 0.600), (0.185, 0.640), (0.225, 0.690), (0.280, 0.735), (0.340, 0.760),
              (0.400, 0.765), (0.460, 0.750), (0.520, 0.715), (0.560, 0.640), (0.575, 0.500),
              (0.570, 0.350), (0.560, 0.190)],
        tip=3, dorsum=(3, 8)),
    "u": dict(
        body=[(0.195, 0.545), (0.220, 0.570), (0.260, 0.600), (0.320, 0.645), (0.380, 0.690),
              (0.440, 0.725), (0.500, 0.745), (0.550, 0.740), (0.600, 0.700), (0.635, 0.600),
              (0.650, 0.480), (0.650, 0.340), (0.640, 0.190)],
        tip=3, dorsum=(3, 9)),
}


def tongue_set(spec):
    b = spec["body"]
    d0, d1 = spec["dorsum"]
    return {
        "tongueBody": resample(b, N_BODY),
        "tongueTip": resample(b[: spec["tip"]], N_TIP),
        "tongueDorsumMark": resample(b[d0:d1], N_DORSUM),
    }


VOWELS = {
    #      jaw    protrusion  upper-bottom  lower-top-offset  larynx dy
    "i": dict(jaw=0.600, prot=-0.010, ub=0.665, lto=0.025, dy=+LARYNX_LOWERING),
    "a": dict(jaw=0.500, prot=0.000, ub=0.657, lto=0.045, dy=0.0),
    "u": dict(jaw=0.585, prot=0.025, ub=0.660, lto=0.040, dy=-LARYNX_LOWERING),
}


def vowel_set(name):
    v = VOWELS[name]
    s = tongue_set(TONGUE[name])
    s["lowerJawTeeth"] = jaw_teeth(v["jaw"])
    s["upperLip"] = upper_lip(v["prot"], v["ub"])
    s["lowerLip"] = lower_lip(v["jaw"], v["prot"], v["jaw"] + v["lto"])
    s["velum"] = velum_closed
    s["larynxGlottis"] = larynx(v["dy"])
    return s


vowel_sets = {k: vowel_set(k) for k in ("i", "a", "u")}

Y_JAW = 0.590
rounding_set = {
    "upperLip": upper_lip(0.030, 0.662),
    "lowerLip": lower_lip(Y_JAW, 0.030, 0.627),
    "lowerJawTeeth": jaw_teeth(Y_JAW),
}

# Neutral tongue (barycentric (0.25 i, 0.25 u, 0.5 a)) as the base for consonant bodies.
neutral_body = [
    tuple(0.25 * vowel_sets["i"]["tongueBody"][k][c] + 0.25 * vowel_sets["u"]["tongueBody"][k][c]
          + 0.5 * vowel_sets["a"]["tongueBody"][k][c] for c in range(2))
    for k in range(N_BODY)
]

# ---------------------------------------------------------------- closure targets

JAW_TARGETS = {
    "bilabial": 0.580, "labiodental": 0.600, "dental": 0.610, "alveolar": 0.615,
    "postalveolar": 0.610, "palatal": 0.600, "velar": 0.585,
}


def follow(cx, dxs, below):
    pts = []
    for dx in dxs:
        x = cx + dx
        pts.append((x, below(x) - CONTACT_CURVATURE * dx * dx))
    return pts


def tip_target(contact, structure_y):
    cx, cy = contact
    pre = [(cx - 0.014, cy - 0.050), (cx - 0.007, cy - 0.018)]
    post = follow(cx, [0.010, 0.020, 0.032], structure_y)
    tail = [(cx + 0.050, structure_y(cx + 0.050) - 0.060),
            (cx + 0.068, structure_y(cx + 0.068) - 0.095)]
    return pre + [contact] + post + tail


DORSUM_GAP_CAP = 0.030  # stays below every vowel's dorsum-to-palate gap


def dorsum_target(contact):
    """Dorsum arc hugging the palate, touching it at `contact`.

    Vertices keep the mean vowel x positions so they rise nearly vertically
    toward the palate as the constriction degree grows."""
    cx, _ = contact
    xs = [sum(vowel_sets[v]["tongueDorsumMark"][k][0] for v in "iau") / 3 for k in range(N_DORSUM)]
    kc = min(range(N_DORSUM), key=lambda k: abs(xs[k] - cx))
    pts = []
    for k, x in enumerate(xs):
        if k == kc:
            pts.append(contact)
        else:
            dx = abs(x - cx)
            pts.append((x, palate_y(x) - min(DORSUM_GAP_CAP, 0.012 + 0.6 * dx)))
    return pts


def body_with_front(front):
    """Tongue body whose anterior part is `front`, continuing along the neutral body."""
    last_x = front[-1][0]
    idx = next(i for i, p in enumerate(neutral_body) if p[0] > last_x + 0.03)
    rest = neutral_body[idx:]
    return resample(front + rest, N_BODY)


def body_with_dorsum(dorsum):
    start_x = dorsum[0][0]
    front = [p for p in neutral_body[:20] if p[0] < start_x - 0.03]
    tx, ty = dorsum[-1]
    root = [(max(tx + 0.03, 0.62), 0.5 * (ty + 0.40)), (0.615, 0.300), (0.600, 0.190)]
    return resample(front + dorsum + root, N_BODY)


neutral_tip = [
    tuple(0.25 * vowel_sets["i"]["tongueTip"][k][c] + 0.25 * vowel_sets["u"]["tongueTip"][k][c]
          + 0.5 * vowel_sets["a"]["tongueTip"][k][c] for c in range(2))
    for k in range(N_TIP)
]
neutral_mark_x = [
    0.25 * vowel_sets["i"]["tongueDorsumMark"][k][0] + 0.25 * vowel_sets["u"]["tongueDorsumMark"][k][0]
    + 0.5 * vowel_sets["a"]["tongueDorsumMark"][k][0]
    for k in range(N_DORSUM)
]


def mark_on(body):
    """Dorsum mark lying on `body`, so the tongue moves as one piece."""
    return [(x, y_at(body, x, pick=max)) for x in neutral_mark_x]


def tip_contours(tip):
    body = body_with_front(tip)
    return {"tongueTip": tip, "tongueBody": body, "tongueDorsumMark": mark_on(body)}


def teeth_lingual_y(x):
    return y_at(upper_teeth[3:], x, pick=max) or palate_y(x)


targets = {}

# lips
bil_up = upper_lip(0.005, 0.645)
bil_lo = lower_lip(JAW_TARGETS["bilabial"], 0.005, 0.645)
bil_lo[2] = bil_up[5]
targets["bilabial"] = {"primary": "lips", "contours": {"upperLip": bil_up, "lowerLip": bil_lo}}

edge = upper_teeth[3]
ld_jaw = JAW_TARGETS["labiodental"]
ld_lo = [(0.116, 0.618), (0.113, 0.628), edge, (0.098, 0.632), (0.085, 0.620),
         (0.072, 0.595), (0.066, 0.565), (0.068, ld_jaw - 0.075)]
targets["labiodental"] = {"primary": "lips",
                          "contours": {"upperLip": upper_lip(0.0, 0.675), "lowerLip": ld_lo}}

# tongue tip
dental_c = upper_teeth[5]
tip = tip_target(dental_c, teeth_lingual_y)
targets["dental"] = {"primary": "tongueTip", "contours": tip_contours(tip)}
for place, x in (("alveolar", 0.165), ("postalveolar", 0.215)):
    c = nearest_vertex(hard_palate, x)
    tip = tip_target(c, palate_y)
    targets[place] = {"primary": "tongueTip", "contours": tip_contours(tip)}

# tongue dorsum
for place, x in (("palatal", 0.36), ("velar", 0.54)):
    c = nearest_vertex(hard_palate, x)
    d = dorsum_target(c)
    targets[place] = {"primary": "tongueDorsum",
                      "contours": {"tongueDorsumMark": d, "tongueBody": body_with_dorsum(d),
                                   "tongueTip": neutral_tip}}

# ---------------------------------------------------------------- checks


def ls(pts):
    return LineString(pts)


palate_line = ls(hard_palate)
teeth_line = ls(upper_teeth)


def check_below_palate(name, pts, tol=0.0):
    for k in range(len(pts) - 1):
        for s in range(21):
            t = s / 20
            x = pts[k][0] + t * (pts[k + 1][0] - pts[k][0])
            y = pts[k][1] + t * (pts[k + 1][1] - pts[k][1])
            py = y_at(hard_palate, x)
            if py is not None and y > py + 1e-9:
                raise SystemExit(f"{name}: point ({x:.4f},{y:.4f}) above palate {py:.4f}")


for place, tgt in targets.items():
    for cname, pts in tgt["contours"].items():
        if cname.startswith("tongue"):
            check_below_palate(f"{place}/{cname}", pts)
    prim = {"tongueDorsum": "tongueDorsumMark"}.get(tgt["primary"], tgt["primary"])
    if prim == "lips":
        a, b = ls(tgt["contours"]["upperLip"]), ls(tgt["contours"]["lowerLip"])
        ref = b.distance(a) if place == "bilabial" else b.distance(teeth_line)
    else:
        ref = ls(tgt["contours"][prim]).distance(palate_line.union(teeth_line))
    assert ref < 1e-12, (place, ref)

for name, s in vowel_sets.items():
    for cname in ("tongueBody", "tongueTip", "tongueDorsumMark"):
        check_below_palate(f"{name}/{cname}", s[cname])
    gap = ls(s["tongueBody"]).distance(palate_line)
    assert gap > 0.03, (name, gap)
    lab = ls(s["upperLip"]).distance(ls(s["lowerLip"]))
    assert lab > 0.015, (name, lab)

assert ls(velum_closed).distance(ls(rear_wall)) < 1e-12
assert ls(velum_open).distance(ls(rear_wall)) > 0.05


# ---------------------------------------------------------------- emit


def contour(name, pts, closed=False):
    return {"name": name, "closed": closed, "points": rp(pts)}


ORDER = ["tongueBody", "tongueTip", "tongueDorsumMark", "lowerJawTeeth", "upperLip", "lowerLip",
         "velum", "larynxGlottis"]


def set_doc(s):
    return [contour(k, s[k]) for k in ORDER if k in s]


doc = {
    "schemaVersion": 1,
    "fixed": [contour("hardPalate", hard_palate), contour("upperTeeth", upper_teeth),
              contour("rearPharynxWall", rear_wall)],
    "vowelPrototypes": {k: set_doc(v) for k, v in vowel_sets.items()},
    "roundingPrototype": set_doc(rounding_set),
    "closureTargets": {
        place: {"primary": t["primary"], "contours": set_doc(t["contours"])}
        for place, t in targets.items()
    },
    "velumExtremes": {"closed": contour("velum", velum_closed),
                      "open": contour("velum", velum_open)},
    "glottisExtremes": {
        "closed": [contour("leftFold", [(0.5, 0.85), (0.5, 0.65), (0.5, 0.45), (0.5, 0.30), (0.5, 0.20)]),
                   contour("rightFold", [(0.5, 0.85), (0.5, 0.65), (0.5, 0.45), (0.5, 0.30), (0.5, 0.20)])],
        "open": [contour("leftFold", [(0.5, 0.85), (0.44, 0.65), (0.38, 0.45), (0.335, 0.30), (0.30, 0.20)]),
                 contour("rightFold", [(0.5, 0.85), (0.56, 0.65), (0.62, 0.45), (0.665, 0.30), (0.70, 0.20)])],
    },
    "jawTargets": JAW_TARGETS,
    "parameters": {"nearGap": NEAR_GAP, "larynxLowering": LARYNX_LOWERING},
    "palatalGrid": {
        "xFront": 0.140, "xBack": 0.580,
        "tongueHalfWidth": [0.55, 0.68, 0.76, 0.80, 0.80, 0.78, 0.74],
        "grooveHalfWidth": 0.20, "lateralBand": 0.16, "grooveReach": 0.05,
    },
    "airways": {
        "nasal": rp([(0.720, 0.840), (0.640, 0.870), (0.520, 0.895), (0.400, 0.905),
                     (0.280, 0.900), (0.160, 0.880), (0.060, 0.850), (-0.020, 0.820)]),
    },
}

with open(os.path.join(OUT, "contours.json"), "w") as f:
    json.dump(doc, f, indent=1)
    f.write("\n")

# ---------------------------------------------------------------- phonemes

NEUTRAL = dict(highLow=0.0, frontBack=0.0, rounding=0.0, labialAperture=0.0,
               tongueTipHeight=0.0, tongueDorsumHeight=0.0, lipsPlace="bilabial",
               lipsManner="full", tipPlace="alveolar", tipManner="full", dorsumPlace="velar",
               dorsumManner="full", velumHeight=0.0, glottalAperture=0.0, vocalFoldTension=0.5,
               lungPressure=0.6)


def st(**kw):
    s = dict(NEUTRAL)
    s.update(kw)
    return s


VOICELESS = dict(glottalAperture=1.0)
phonemes = [
    ("i", "vowel", "close front unrounded", st(highLow=1.0, frontBack=1.0, rounding=-0.3)),
    ("e", "vowel", "close-mid front unrounded", st(highLow=0.5, frontBack=0.75, rounding=-0.2)),
    ("a", "vowel", "open central unrounded", st(highLow=-1.0)),
    ("o", "vowel", "close-mid back rounded", st(highLow=0.5, frontBack=-0.75, rounding=0.7)),
    ("u", "vowel", "close back rounded", st(highLow=1.0, frontBack=-1.0, rounding=1.0)),
    ("y", "vowel", "close front rounded", st(highLow=1.0, frontBack=1.0, rounding=1.0)),
    ("@", "vowel", "schwa, neutral tract", st()),
    ("p", "plosive", "voiceless bilabial", st(labialAperture=1.0, **VOICELESS)),
    ("b", "plosive", "voiced bilabial", st(labialAperture=1.0)),
    ("t", "plosive", "voiceless alveolar", st(tongueTipHeight=1.0, **VOICELESS)),
    ("d", "plosive", "voiced alveolar", st(tongueTipHeight=1.0)),
    ("k", "plosive", "voiceless velar", st(tongueDorsumHeight=1.0, **VOICELESS)),
    ("g", "plosive", "voiced velar", st(tongueDorsumHeight=1.0)),
    ("m", "nasal", "bilabial nasal", st(labialAperture=1.0, velumHeight=1.0)),
    ("n", "nasal", "alveolar nasal", st(tongueTipHeight=1.0, velumHeight=1.0)),
    ("N", "nasal", "velar nasal", st(tongueDorsumHeight=1.0, velumHeight=1.0)),
    ("f", "fricative", "voiceless labiodental",
     st(labialAperture=1.0, lipsPlace="labiodental", lipsManner="near", **VOICELESS)),
    ("v", "fricative", "voiced labiodental",
     st(labialAperture=1.0, lipsPlace="labiodental", lipsManner="near")),
    ("s", "fricative", "voiceless alveolar", st(tongueTipHeight=1.0, tipManner="near", **VOICELESS)),
    ("z", "fricative", "voiced alveolar", st(tongueTipHeight=1.0, tipManner="near")),
    ("S", "fricative", "voiceless postalveolar, lips rounded",
     st(tongueTipHeight=1.0, tipPlace="postalveolar", tipManner="near", rounding=0.5, **VOICELESS)),
    ("Z", "fricative", "voiced postalveolar, lips rounded",
     st(tongueTipHeight=1.0, tipPlace="postalveolar", tipManner="near", rounding=0.5)),
    ("l", "lateral", "alveolar lateral approximant", st(tongueTipHeight=1.0, tipManner="lateral")),
]

with open(os.path.join(OUT, "phonemes.json"), "w") as f:
    json.dump({"schemaVersion": 1,
               "phonemes": [{"sampa": s, "class": c, "note": n, "state": state}
                            for s, c, n, state in phonemes]}, f, indent=1)
    f.write("\n")

print("wrote", OUT)
