#!/usr/bin/env python3
"""
Tests for JSON decoding and encoding of bundle descriptors and patterns.
"""

import json
import unittest

from symstab.bundles.symalg import (
    FormalStable,
    LineClass,
    PushforwardTwist,
    Split,
    TriplePresentation,
)
from symstab.core.covering import enumerate_prym_torsion, make_cyclic_cover, make_double_cover
from symstab.core.torsion import TorsionVector
from symstab.utils.codec import (
    bundle_from_json,
    bundle_to_json,
    dumps,
    pattern_from_json,
    statuses_from_json,
)
from symstab.utils.errors import ParseError

V = TorsionVector.parse
COV = make_double_cover(2, V("1/2,0,0,0"))
SKEW = make_double_cover(2, V("1/2,1/2,0,1/2"))
COV3 = make_cyclic_cover(2, V("1/3,0,0,0"), 3)
ZERO4 = V("0,0,0,0")


def descriptors():
    out = [PushforwardTwist(COV, r, LineClass.from_torsion(V("1/4,0,0,0")))
           for r in enumerate_prym_torsion(COV, 3)]
    out += [PushforwardTwist(SKEW, SKEW.torsion_class(V("0,1/2,0,0"), V("1/3,0")),
                             LineClass.from_torsion(V("1/4,1/4,0,1/4")))]
    out += [Split(LineClass(d, V(t))) for d, t in ((0, "1/3,0,0,0"), (2, "1/2,0,1/5,0"))]
    out += [Split(LineClass(0, ZERO4, (("x", 1), ("y", -2))))]
    out += [FormalStable("E0"), FormalStable("E1", genus=3)]
    out += [TriplePresentation(COV3, COV3.torsion_class(ZERO4, V("1/2,0,0,0")))]
    return out


class TestBundleRoundTrip(unittest.TestCase):

    def test_emitted_descriptors_reparse(self):
        for desc in descriptors():
            with self.subTest(desc=desc):
                self.assertEqual(bundle_from_json(bundle_to_json(desc)), desc)

    def test_round_trip_through_text(self):
        for desc in descriptors():
            with self.subTest(desc=desc):
                text = dumps(bundle_to_json(desc))
                again = bundle_from_json(json.loads(text))
                self.assertEqual(dumps(bundle_to_json(again)), text)


class TestUnknownKeys(unittest.TestCase):
    """Mistyped keys are rejected instead of being dropped."""

    def setUp(self):
        self.document = bundle_to_json(descriptors()[1])

    def test_accepts_canonical_document(self):
        bundle_from_json(self.document)

    def test_rejects_misspelled_prym(self):
        self.document["pushforward"]["R"]["Prym"] = self.document["pushforward"]["R"].pop("prym")
        with self.assertRaises(ParseError) as ctx:
            bundle_from_json(self.document)
        self.assertIn("Prym", str(ctx.exception))

    def test_rejects_extra_keys_at_every_level(self):
        paths = [(), ("pushforward",), ("pushforward", "cov"), ("pushforward", "A")]
        for path in paths:
            document = json.loads(json.dumps(self.document))
            node = document
            for key in path:
                node = node[key]
            node["comment"] = "ignored?"
            with self.subTest(path=path):
                with self.assertRaises(ParseError):
                    bundle_from_json(document)

    def test_pattern_and_statuses(self):
        with self.assertRaises(ParseError):
            pattern_from_json([{"point": "x1", "fibre": "f1"}])
        with self.assertRaises(ParseError):
            pattern_from_json({"points": [], "n": 1})
        with self.assertRaises(ParseError):
            statuses_from_json({"statuses": {"2": {"status": "stable", "note": "x"}}})


if __name__ == '__main__':
    unittest.main()
