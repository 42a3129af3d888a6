import io
import json
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from biaozhun.algebra.monomials import Monomial
from biaozhun.algebra.scalars import I
from biaozhun.algebra.series import HoloSeries, PuSeries, levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.cli.commands import EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, build_parser, main
from biaozhun.cli.documents import jet_to_document, map_to_document, polynomial_to_document
from biaozhun.errors import DegenerateRecursionError, InternalInvariantError
from biaozhun.hypersurface.jet import quadric, validate_hypersurface, validate_real_jet
from biaozhun.hypersurface.mapjet import validate_map
from biaozhun.hypersurface.transform import apply_map


class TestCommands(unittest.TestCase):

    def setUp(self):
        """测试前准备"""
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        sig = Signature((1,))
        phi = levi_form(sig, 5) + PuSeries(1, 5, {Monomial((3,), (0,), 0): 1, Monomial((0,), (3,), 0): 1})
        self.cubic = validate_hypersurface(phi, sig)
        self.cubic_path = self._write("cubic.json", jet_to_document(self.cubic))
        self.quadric_path = self._write("quadric.json", jet_to_document(quadric(sig, 5)))

    def tearDown(self):
        self._tmp.cleanup()

    def _write(self, name: str, doc) -> str:
        path = self.tmp / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
        return str(path)

    def _read(self, name: str):
        return json.loads((self.tmp / name).read_text(encoding="utf-8"))

    def _run(self, *argv: str) -> tuple[int, str, str]:
        with patch("sys.stdout", new_callable=io.StringIO) as out, \
                patch("sys.stderr", new_callable=io.StringIO) as err:
            code = main(["--log-level", "ERROR", *argv])
        return code, out.getvalue(), err.getvalue()

    # ========== normalize ==========
    def test_normalize(self):
        """测试 normalize 写出标准形与映射"""
        code, out, _ = self._run("normalize", self.cubic_path, "--spec", "chern-moser",
                                 "--out-nf", str(self.tmp / "nf.json"), "--out-map", str(self.tmp / "map.json"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self._read("nf.json"), jet_to_document(quadric(Signature((1,)), 5)))
        z, w = HoloSeries.z(1, 0, 5), HoloSeries.w(1, 5)
        self.assertEqual(self._read("map.json"), map_to_document(validate_map([z], w + (z ** 3).scale(-2 * I))))
        self.assertIn("规格 chern-moser，截断权 5，违例 0", out)

    def test_normalize_to_stdout(self):
        """测试标准形写到标准输出时报告改写到标准错误"""
        code, out, err = self._run("normalize", self.cubic_path, "--max-weight", "4", "--oracle")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), jet_to_document(quadric(Signature((1,)), 4)))
        self.assertIn("截断权 4", err)

    def test_normalize_max_weight_too_high(self):
        """测试 --max-weight 超过 jet 截断权"""
        code, _, err = self._run("normalize", self.cubic_path, "--max-weight", "9")
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("[ERROR]", err)

    def test_internal_error(self):
        """测试内部不变量被破坏时退出码为 2"""
        with patch("biaozhun.cli.commands.NormalizerFactory.normalize", side_effect=InternalInvariantError("线方程奇异")):
            code, _, err = self._run("normalize", self.cubic_path)
        self.assertEqual(code, EXIT_INTERNAL)
        self.assertIn("线方程奇异", err)

    # ========== 错误输入 ==========
    def test_parse_error(self):
        """测试系数语法错误退出码为 3 并给出位置"""
        doc = jet_to_document(self.cubic)
        doc["terms"][0]["coeff"] = "1//2"
        code, _, err = self._run("check", self._write("bad.json", doc))
        self.assertEqual(code, EXIT_PARSE)
        self.assertIn("$.terms[0].coeff 列 2", err)

    def test_non_ascii_digit(self):
        """测试系数含上标数字时退出码为 3 而非异常退出"""
        doc = jet_to_document(self.cubic)
        doc["terms"][0]["coeff"] = "²"
        code, _, err = self._run("normalize", self._write("superscript.json", doc))
        self.assertEqual(code, EXIT_PARSE)
        self.assertIn("$.terms[0].coeff 列 0", err)

    def test_unexpected_error(self):
        """测试迹分解递推退化等未预期异常退出码为 2"""
        sig = Signature((1, -1))
        path = self._write("levi.json", polynomial_to_document(levi_form(sig, 4), sig))
        with patch("biaozhun.cli.commands.trace_decompose", side_effect=DegenerateRecursionError("c_1=0")):
            code, _, err = self._run("decompose", path, "--s", "1")
        self.assertEqual(code, EXIT_INTERNAL)
        self.assertIn("DegenerateRecursionError", err)
        with patch("biaozhun.cli.commands.trace_decompose", side_effect=KeyError("q")):
            self.assertEqual(self._run("decompose", path, "--s", "1")[0], EXIT_INTERNAL)

    def test_invalid_json(self):
        """测试非法 JSON 退出码为 3"""
        code, _, _ = self._run("check", self._write("broken.json", '{"n": 1'))
        self.assertEqual(code, EXIT_PARSE)

    def test_missing_file(self):
        """测试输入文件不存在"""
        code, _, _ = self._run("check", str(self.tmp / "missing.json"))
        self.assertEqual(code, EXIT_VALIDATION)

    def test_invalid_jet(self):
        """测试 Levi 形式与签名不符"""
        doc = jet_to_document(self.cubic)
        doc["eps"] = [-1]
        code, _, err = self._run("normalize", self._write("wrong.json", doc))
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("Levi", err)

    def test_missing_config(self):
        """测试显式给出的配置文件不存在"""
        with patch("sys.stderr", new_callable=io.StringIO):
            code = main(["--config", str(self.tmp / "none.yaml"), "check", self.quadric_path])
        self.assertEqual(code, EXIT_VALIDATION)

    # ========== check / apply ==========
    def test_check(self):
        """测试 check 在满足与违反时的退出码"""
        code, out, _ = self._run("check", self.quadric_path, "--spec", "nf2")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("满足 nf2", out)
        code, out, _ = self._run("check", self.cubic_path)
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("φ_{3,0,0} = 0", out)

    def test_apply(self):
        """测试 apply --verify 输出像 jet"""
        z, w = HoloSeries.z(1, 0, 5), HoloSeries.w(1, 5)
        h = validate_map([z + (z * w).scale(2)], w + (w * w).scale(I))
        map_path = self._write("h.json", map_to_document(h))
        code, _, _ = self._run("apply", self.cubic_path, map_path, "--out", str(self.tmp / "image.json"), "--verify")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self._read("image.json"), jet_to_document(apply_map(self.cubic, h)))

    # ========== decompose ==========
    def test_decompose(self):
        """测试 ⟨z,z⟩ 的迹分解与复核"""
        sig = Signature((1, -1))
        path = self._write("levi.json", polynomial_to_document(levi_form(sig, 4), sig))
        code, out, _ = self._run("decompose", path, "--s", "1", "--verify")
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertEqual(doc["s"], 1)
        self.assertEqual(doc["q"]["terms"], [{"z": [0, 0], "zbar": [0, 0], "u": 0, "coeff": "1"}])
        self.assertEqual(doc["r"]["terms"], [])

    def test_decompose_signature(self):
        """测试迹分解的签名来源"""
        path = self._write("poly.json", polynomial_to_document(levi_form(Signature((1,)), 3)))
        self.assertEqual(self._run("decompose", path, "--s", "1")[0], EXIT_VALIDATION)
        self.assertEqual(self._run("decompose", path, "--s", "1", "--eps", "1,x")[0], EXIT_PARSE)
        self.assertEqual(self._run("decompose", path, "--s", "1", "--eps", "2")[0], EXIT_VALIDATION)
        code, out, _ = self._run("decompose", path, "--s", "1", "--eps", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["q"]["eps"], [1])

    # ========== spec ==========
    def test_spec_validate(self):
        """测试 spec validate 对预设与非法自定义规格"""
        code, out, _ = self._run("spec", "validate", "mixed", "--max-weight", "9")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("合法", out)
        bad = self._write("bad_spec.json", {"max_weight": 4, "custom": [
            {"kind": "k>=2", "k": 2, "l": 1, "m": 0, "mp": 1}]})
        self.assertEqual(self._run("spec", "validate", bad)[0], EXIT_VALIDATION)

    def test_spec_show(self):
        """测试 spec show 列出条件"""
        code, out, _ = self._run("spec", "show", "nf1", "--max-weight", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("φ_{3,0,0} = 0", out)
        self.assertIn("φ_{2,1,0} = 0", out)

    # ========== harmonics ==========
    def test_harmonics_degenerate(self):
        """测试 Levi 退化 jet 的调和项消去"""
        phi = PuSeries(1, 4, {Monomial((2,), (0,), 1): 1, Monomial((0,), (2,), 1): 1,
                              Monomial((2,), (2,), 0): 1})
        path = self._write("degenerate.json", jet_to_document(validate_real_jet(phi)))
        code, out, _ = self._run("harmonics", path, "--out-map", str(self.tmp / "hmap.json"))
        self.assertEqual(code, EXIT_OK)
        terms = json.loads(out)["terms"]
        self.assertTrue(terms)
        self.assertTrue(all(any(t["zbar"]) and any(t["z"]) for t in terms))
        self.assertTrue(self._read("hmap.json")["g"])

    # ========== 参数 ==========
    def test_parser(self):
        """测试参数解析"""
        args = build_parser().parse_args(["--log-level", "debug", "spec", "show", "nf12"])
        self.assertEqual(args.log_level, "DEBUG")
        self.assertIsNone(args.max_weight)
        with patch("sys.stdout", new_callable=io.StringIO), self.assertRaises(SystemExit) as context:
            build_parser().parse_args(["--version"])
        self.assertEqual(context.exception.code, 0)
        with patch("sys.stderr", new_callable=io.StringIO), self.assertRaises(SystemExit):
            build_parser().parse_args(["decompose", "p.json"])


if __name__ == '__main__':
    unittest.main()
