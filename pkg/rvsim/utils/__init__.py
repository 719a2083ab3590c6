"""Bit and text helpers."""
