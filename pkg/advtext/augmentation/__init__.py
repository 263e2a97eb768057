from advtext.augmentation.augmenter import (
    AUGMENTATION_RECIPES,
    Augmenter,
    EasyDataAugmenter,
    augment_dataset,
    augment_frame,
    build_augmenter,
    charswap_augmenter,
    embedding_augmenter,
)
