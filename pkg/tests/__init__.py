"""
函数方程验证工具测试模块
"""
