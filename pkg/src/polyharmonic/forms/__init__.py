"""Point evaluators for the modular objects under study."""
