"""Gradings of finite-dimensional Lie algebras over Q."""
