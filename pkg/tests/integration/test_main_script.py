"""
集成测试 - verifyfeq.sh 主脚本与 cli.py
"""

import math
import os
import subprocess
import sys
import tempfile
import unittest


class TestVerifyFeqScript(unittest.TestCase):
    """测试主验证脚本"""

    def setUp(self):
        """测试前准备"""
        self.temp_dir = tempfile.mkdtemp()
        self.script_dir = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
        self.script_path = os.path.join(self.script_dir, "verifyfeq.sh")

    def tearDown(self):
        """测试后清理"""
        import shutil
        if os.path.exists(self.temp_dir):
            shutil.rmtree(self.temp_dir)

    def test_script_exists(self):
        """测试脚本文件存在"""
        self.assertTrue(os.path.exists(self.script_path))

    def test_script_executable(self):
        """测试脚本是否可执行"""
        self.assertTrue(os.access(self.script_path, os.X_OK))

    def test_help_option(self):
        """测试帮助选项"""
        try:
            result = subprocess.run([
                self.script_path, "--help"
            ], capture_output=True, text=True, timeout=30)

            self.assertEqual(result.returncode, 0)
            self.assertIn("函数方程验证工具", result.stdout)
            self.assertIn("用法:", result.stdout)

        except subprocess.TimeoutExpired:
            self.fail("帮助命令超时")
        except FileNotFoundError:
            self.skipTest("无法执行shell脚本，可能缺少bash")

    def test_unknown_option(self):
        """测试未知选项返回 2"""
        try:
            result = subprocess.run([
                self.script_path, "--bogus"
            ], capture_output=True, text=True, timeout=30)

            self.assertEqual(result.returncode, 2)
            self.assertIn("未知选项", result.stdout)

        except subprocess.TimeoutExpired:
            self.fail("未知选项测试超时")
        except FileNotFoundError:
            self.skipTest("无法执行shell脚本，可能缺少bash")

    def test_invalid_format(self):
        """测试不支持的记录格式"""
        try:
            result = subprocess.run([
                self.script_path, "--format", "xml", "-o", self.temp_dir
            ], capture_output=True, text=True, timeout=30)

            self.assertEqual(result.returncode, 2)

        except subprocess.TimeoutExpired:
            self.fail("格式检查超时")
        except FileNotFoundError:
            self.skipTest("无法执行shell脚本，可能缺少bash")


class TestCliEntryPoint(unittest.TestCase):
    """以子进程方式运行 cli.py"""

    def setUp(self):
        """测试前准备"""
        self.project_dir = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
        self.cli_path = os.path.join(self.project_dir, "cli.py")

    def run_cli(self, *args):
        return subprocess.run([sys.executable, self.cli_path, *args],
                              capture_output=True, text=True, timeout=120)

    def test_help(self):
        """测试帮助信息"""
        result = self.run_cli("--help")
        self.assertEqual(result.returncode, 0)
        self.assertIn("verify-feq", result.stdout)

    def test_records_on_stdout(self):
        """测试记录写到标准输出，状态信息写到标准错误"""
        result = self.run_cli("eval-xi", "--s", "2")
        self.assertEqual(result.returncode, 0)
        lines = result.stdout.strip().splitlines()
        self.assertEqual(len(lines), 2)
        header = lines[0].split(",")
        row = lines[1].split(",")
        value = float(row[header.index("value_re")])
        self.assertAlmostEqual(value, math.pi / 6, delta=1e-14)
        self.assertIn("eval-xi", result.stderr)

    def test_usage_error_exit_code(self):
        """测试用法错误退出码为 2"""
        result = self.run_cli("eval-xi", "--s", "not-a-number")
        self.assertEqual(result.returncode, 2)

    def test_numeric_failure_exit_code(self):
        """测试数值失败退出码为 1"""
        result = self.run_cli("verify-feq", "--z=-1")
        self.assertEqual(result.returncode, 1)
        self.assertIn("false", result.stdout)


class TestProjectStructure(unittest.TestCase):
    """测试项目结构"""

    def setUp(self):
        """测试前准备"""
        self.project_dir = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

    def test_modules_exist(self):
        """测试所有必需的模块都存在"""
        for module in ("errors.py", "config.py", "reporting.py", "quadrature.py",
                       "special_functions.py", "theta_kernel.py", "feq_solver.py", "cli.py"):
            self.assertTrue(os.path.exists(os.path.join(self.project_dir, module)),
                            f"模块不存在: {module}")

    def test_readme_exists(self):
        """测试README文件存在"""
        self.assertTrue(os.path.exists(os.path.join(self.project_dir, "README.md")))

    def test_requirements_exists(self):
        """测试requirements.txt存在"""
        self.assertTrue(os.path.exists(os.path.join(self.project_dir, "requirements.txt")))

    def test_gitignore_exists(self):
        """测试.gitignore存在"""
        self.assertTrue(os.path.exists(os.path.join(self.project_dir, ".gitignore")))

    def test_pytest_config_exists(self):
        """测试pytest配置存在"""
        self.assertTrue(os.path.exists(os.path.join(self.project_dir, "pytest.ini")))

    def test_tests_directory_structure(self):
        """测试测试目录结构"""
        tests_dir = os.path.join(self.project_dir, "tests")
        self.assertTrue(os.path.exists(os.path.join(tests_dir, "unit")))
        self.assertTrue(os.path.exists(os.path.join(tests_dir, "integration")))


if __name__ == '__main__':
    unittest.main(verbosity=2)
