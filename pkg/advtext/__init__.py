"""Component-based adversarial attacks, augmentation and adversarial training for text models."""

__version__ = "0.1.0"
