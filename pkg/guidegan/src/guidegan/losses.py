"""Loss terms for supervised blending with an adversarial regulariser.

The generator objective is lambda_l2 * ||G(x) - x_g||^2 plus
(1 - lambda_l2) * (E[D(x_g)] - E[D(G(x))]), where the critic D is trained
to maximise the bracketed difference under weight clipping.
"""

import torch


def l2_term(output, target):
    """Per-sample squared error summed over pixels, averaged over the batch."""
    if output.shape != target.shape:
        raise ValueError(f"shape mismatch: {tuple(output.shape)} vs {tuple(target.shape)}")
    diff = output - target
    return diff.flatten(1).pow(2).sum(dim=1).mean()


def adversarial_term(critic, real, fake):
    """E[D(real)] - E[D(fake)], the quantity the critic maximises."""
    return critic(real).mean() - critic(fake).mean()


def combined_loss(generator, critic, composite, target, lambda_l2):
    """Full generator objective; lambda_l2 == 1 reduces to the pure L2 term
    and ignores the critic entirely."""
    if not 0.0 < lambda_l2 <= 1.0:
        raise ValueError("lambda_l2 must lie in (0, 1]")
    output = generator(composite)
    loss = lambda_l2 * l2_term(output, target)
    if lambda_l2 < 1.0:
        if critic is None:
            raise ValueError("lambda_l2 < 1 requires a critic")
        loss = loss + (1.0 - lambda_l2) * adversarial_term(critic, target, output)
    return loss


def critic_loss(critic, real, fake):
    """Minimised by the critic optimiser: the negated adversarial term."""
    return -adversarial_term(critic, real, fake)


def clip_weights(critic, bound):
    """Clamp every critic parameter to [-bound, bound] in place."""
    if bound <= 0:
        raise ValueError("clip bound must be positive")
    with torch.no_grad():
        for p in critic.parameters():
            p.clamp_(-bound, bound)
