"""Desk-scale workbench for agent modelling from local information.

Three partially observable multi-agent environments with fixed partner
policy pools, a recurrent encoder-decoder that embeds the other agents'
behaviour from the controlled agent's own trajectory, an A2C learner
conditioned on those embeddings, and the baseline variants, ablations,
and evaluation probes that go with them.
"""

__version__ = "0.1.0"
