"""
stablewave 测试模块

包含所有测试用例和测试工具。
"""
