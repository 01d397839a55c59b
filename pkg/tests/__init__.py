"""Tests for graph-recon."""
