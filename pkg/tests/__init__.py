"""Tests package - Contains test suites"""
