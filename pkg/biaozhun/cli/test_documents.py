import io
import json
import random
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from biaozhun.algebra.monomials import Monomial
from biaozhun.algebra.scalars import GaussianRational
from biaozhun.algebra.series import PuSeries
from biaozhun.algebra.signature import Signature
from biaozhun.cli.documents import (dumps, jet_from_document, jet_to_document, loads, map_from_document,
                                    map_to_document, polynomial_from_document, polynomial_to_document,
                                    read_document, spec_argument, spec_from_document, spec_to_document,
                                    write_document)
from biaozhun.errors import ParseError, ValidationError
from biaozhun.hypersurface.jet import quadric
from biaozhun.normalform.spec import custom, preset
from biaozhun.samples import random_fg_map, random_jet


def _quadric_doc(n: int = 1, max_weight: int = 4) -> dict:
    return {
        "n": n,
        "eps": [1] * n,
        "max_weight": max_weight,
        "terms": [{"z": [1 if i == j else 0 for i in range(n)], "zbar": [1 if i == j else 0 for i in range(n)],
                   "coeff": "1"} for j in range(n)],
    }


class TestJetDocuments(unittest.TestCase):

    def test_quadric(self):
        """测试二次超曲面文档"""
        self.assertEqual(jet_from_document(_quadric_doc(2)), quadric(Signature((1, 1)), 4))
        doc = jet_to_document(quadric(Signature((1, -1)), 3))
        self.assertEqual(doc["eps"], [1, -1])
        self.assertIn({"z": [0, 1], "zbar": [0, 1], "u": 0, "coeff": "-1"}, doc["terms"])

    def test_round_trip(self):
        """测试随机 jet 经文本往返不变"""
        m = random_jet(random.Random(4), Signature((1, -1)), 6)
        self.assertEqual(jet_from_document(loads(dumps(jet_to_document(m)))), m)

    def test_bad_coefficient(self):
        """测试系数语法错误给出 JSON 路径与列号"""
        doc = _quadric_doc()
        doc["terms"][0]["coeff"] = "1//2"
        with self.assertRaises(ParseError) as context:
            jet_from_document(doc)
        self.assertEqual(context.exception.where, "$.terms[0].coeff 列 2")

    def test_structure_errors(self):
        """测试结构错误均为 ParseError"""
        cases = [
            ("n", 0, "$.n"),
            ("eps", [2], "$.eps[0]"),
            ("eps", [1, 1], "$.eps"),
            ("terms", {}, "$.terms"),
        ]
        for key, value, where in cases:
            with self.subTest(key=key, value=value):
                doc = _quadric_doc()
                doc[key] = value
                with self.assertRaises(ParseError) as context:
                    jet_from_document(doc)
                self.assertEqual(context.exception.where, where)
        doc = _quadric_doc()
        doc["terms"][0]["z"] = [1, 0]
        with self.assertRaises(ParseError):
            jet_from_document(doc)
        del doc["eps"]
        with self.assertRaises(ParseError):
            jet_from_document(doc)

    def test_invariant_violation(self):
        """测试结构合法但不满足 jet 不变量时为 ValidationError"""
        doc = _quadric_doc()
        doc["terms"].append({"z": [2], "zbar": [0], "coeff": "1"})
        with self.assertRaises(ValidationError) as context:
            jet_from_document(doc)
        self.assertNotIsInstance(context.exception, ParseError)

    def test_degenerate_without_eps(self):
        """测试省略 eps 时得到 Levi 退化的实 jet"""
        doc = {"n": 1, "max_weight": 4, "terms": [{"z": [2], "zbar": [2], "coeff": "3/2"}]}
        m = jet_from_document(doc, require_eps=False)
        self.assertIsNone(m.sig)
        self.assertEqual(m.phi, PuSeries(1, 4, {Monomial((2,), (2,), 0): GaussianRational("3/2")}))
        self.assertNotIn("eps", jet_to_document(m))

    def test_polynomial(self):
        """测试多项式文档不做实性校验"""
        doc = {"n": 1, "max_weight": 3, "terms": [{"z": [2], "zbar": [1], "coeff": "0+1i"},
                                                  {"z": [2], "zbar": [1], "coeff": "1"}]}
        p, sig = polynomial_from_document(doc)
        self.assertIsNone(sig)
        self.assertEqual(p, PuSeries(1, 3, {Monomial((2,), (1,), 0): GaussianRational(1, 1)}))
        self.assertEqual(polynomial_to_document(p)["terms"][0]["coeff"], "1+1i")

    def test_invalid_json(self):
        """测试非法 JSON 给出行列号"""
        with self.assertRaises(ParseError) as context:
            loads('{"n": 1,', "jet.json")
        self.assertTrue(context.exception.where.startswith("行 1"))


class TestMapDocuments(unittest.TestCase):

    def test_round_trip(self):
        """测试映射文档往返"""
        h = random_fg_map(random.Random(9), 2, 5)
        self.assertEqual(map_from_document(loads(dumps(map_to_document(h)))), h)

    def test_component_count(self):
        """测试 f 分量个数"""
        doc = map_to_document(random_fg_map(random.Random(9), 2, 4))
        doc["f"] = doc["f"][:1]
        with self.assertRaises(ParseError) as context:
            map_from_document(doc)
        self.assertEqual(context.exception.where, "$.f")

    def test_map_invariants(self):
        """测试 g 含 z 的线性项时为 ValidationError"""
        doc = {"n": 1, "max_weight": 3, "f": [[{"z": [1], "coeff": "1"}]],
               "g": [{"z": [0], "w": 1, "coeff": "1"}, {"z": [1], "coeff": "2"}]}
        with self.assertRaises(ValidationError):
            map_from_document(doc)


class TestSpecDocuments(unittest.TestCase):

    def test_preset(self):
        """测试预设规格文档"""
        spec = spec_from_document({"preset": "Min-L"}, max_weight=5)
        self.assertEqual(spec.table, preset("min_l", 5).table)
        self.assertEqual(spec_to_document(spec), {"preset": "min-l", "max_weight": 5})
        self.assertEqual(spec_from_document({"preset": "nf1", "max_weight": 3}, max_weight=7).max_weight, 3)

    def test_custom_round_trip(self):
        """测试自定义规格文档往返"""
        spec = custom([c for c in preset("mixed", 6).lines() if c.needs_indices], 6)
        doc = spec_to_document(spec)
        self.assertIn({"kind": "k=0", "k": 0, "l": 3, "m": 2, "mp": 0, "mt": 3, "mtp": 1}, doc["custom"])
        self.assertEqual(spec_from_document(loads(dumps(doc))).table, spec.table)

    def test_errors(self):
        """测试规格文档的错误"""
        cases = [
            {"preset": "nf1", "custom": [], "max_weight": 3},
            {},
            {"preset": "nf1"},
            {"custom": []},
            {"max_weight": 3, "custom": [{"kind": "k=7", "k": 2, "l": 1, "m": 1, "mp": 0}]},
            {"max_weight": 3, "custom": [{"kind": "k=1", "k": 2, "l": 1, "m": 1, "mp": 0}]},
            {"max_weight": 4, "custom": [{"kind": "k>=2", "k": 2, "l": 1, "m": 1}]},
        ]
        for doc in cases:
            with self.subTest(doc=doc):
                with self.assertRaises(ParseError):
                    spec_from_document(doc)
        with self.assertRaises(ValidationError):
            spec_from_document({"preset": "poincare", "max_weight": 3})
        with self.assertRaises(ValidationError):
            spec_from_document({"max_weight": 4, "custom": [{"kind": "k>=2", "k": 2, "l": 1, "m": 1, "mp": 1}]})

    def test_spec_argument(self):
        """测试命令行规格参数：预设名或文件路径"""
        self.assertEqual(spec_argument("chern-moser", 4).preset, "chern_moser")
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "spec.json"
            path.write_text(json.dumps({"max_weight": 4, "custom": [
                {"kind": "k>=2", "k": 2, "l": 1, "m": 1, "mp": 0}]}), encoding="utf-8")
            spec = spec_argument(str(path), 9)
            self.assertEqual(spec.max_weight, 4)
            self.assertEqual(spec.choice_for(2, 1).indices, (1, 0))
            with self.assertRaises(OSError):
                spec_argument(str(Path(tmp) / "missing.json"))


class TestReadWrite(unittest.TestCase):

    def test_file_round_trip(self):
        """测试写出文件（自动建目录）并读回"""
        doc = jet_to_document(quadric(Signature((1, -1)), 4))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "out" / "nf.json"
            write_document(doc, str(path))
            self.assertEqual(read_document(str(path)), doc)
            self.assertTrue(path.read_text(encoding="utf-8").endswith("}\n"))

    def test_standard_streams(self):
        """测试 - 表示标准输入输出"""
        doc = _quadric_doc()
        with patch("sys.stdout", new_callable=io.StringIO) as out:
            write_document(doc, "-")
        self.assertEqual(json.loads(out.getvalue()), doc)
        with patch("sys.stdin", io.StringIO(json.dumps(doc))):
            self.assertEqual(read_document("-"), doc)


if __name__ == '__main__':
    unittest.main()
