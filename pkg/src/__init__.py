"""Swarm Throughput Lab: common-target throughput of robotic swarm entry strategies."""

__version__ = "0.1.0"
