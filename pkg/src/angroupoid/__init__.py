"""Cluster structures of the A_n symplectic groupoid, in exact arithmetic."""
