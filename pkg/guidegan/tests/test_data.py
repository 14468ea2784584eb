"""Pair construction and the two dataset flavours."""

import numpy as np
import pytest
import torch

from guidegan import EmptyDataset, FolderPairs, MisalignedPair, SyntheticPairs, make_training_pair
from conftest import save_rgb_png, scene_pair


class TestMakeTrainingPair:
    def test_center_comes_from_first_image(self):
        a = torch.full((3, 8, 8), 0.75)
        b = torch.full((3, 8, 8), 0.25)
        composite, target = make_training_pair(a, b)
        assert torch.all(composite[:, 2:6, 2:6] == 0.75)
        assert torch.equal(target, b)

    def test_border_comes_from_second_image(self):
        a = torch.full((3, 8, 8), 0.75)
        b = torch.full((3, 8, 8), 0.25)
        composite, _ = make_training_pair(a, b)
        border = composite.clone()
        border[:, 2:6, 2:6] = 0.25
        assert torch.all(border == 0.25)

    def test_square_covers_half_the_side(self):
        a = torch.ones(3, 64, 64)
        b = torch.zeros(3, 64, 64)
        composite, _ = make_training_pair(a, b)
        assert float(composite.sum()) == 3 * 32 * 32
        assert torch.all(composite[:, 16:48, 16:48] == 1.0)

    def test_returns_copies(self):
        a = torch.rand(3, 16, 16)
        b = torch.rand(3, 16, 16)
        composite, target = make_training_pair(a, b)
        before = target.clone()
        b[0, 0, 0] = -5.0
        assert torch.equal(target, before)
        assert composite[0, 0, 0] != -5.0

    def test_shape_disagreement_raises(self):
        with pytest.raises(MisalignedPair):
            make_training_pair(torch.rand(3, 16, 16), torch.rand(3, 32, 32))

    def test_non_square_raises(self):
        with pytest.raises(ValueError):
            make_training_pair(torch.rand(3, 16, 32), torch.rand(3, 16, 32))

    def test_wrong_channel_count_raises(self):
        with pytest.raises(ValueError):
            make_training_pair(torch.rand(1, 16, 16), torch.rand(1, 16, 16))

    def test_too_small_raises(self):
        with pytest.raises(ValueError):
            make_training_pair(torch.rand(3, 2, 2), torch.rand(3, 2, 2))


class TestSyntheticPairs:
    def test_length_and_shapes(self):
        ds = SyntheticPairs(5, 64, seed=1)
        assert len(ds) == 5
        composite, target = ds[0]
        assert composite.shape == (3, 64, 64)
        assert target.shape == (3, 64, 64)

    def test_values_in_unit_range(self):
        ds = SyntheticPairs(4, 32, seed=2)
        for composite, target in ds:
            for t in (composite, target):
                assert float(t.min()) >= 0.0
                assert float(t.max()) <= 1.0

    def test_same_seed_reproduces_corpus(self):
        a = SyntheticPairs(3, 32, seed=7)
        b = SyntheticPairs(3, 32, seed=7)
        for (ca, ta), (cb, tb) in zip(a, b):
            assert torch.equal(ca, cb)
            assert torch.equal(ta, tb)

    def test_pair_differs_only_in_center(self):
        ds = SyntheticPairs(3, 64, seed=3)
        composite, target = ds[1]
        outside = torch.ones(64, 64, dtype=torch.bool)
        outside[16:48, 16:48] = False
        assert torch.equal(composite[:, outside], target[:, outside])
        assert not torch.equal(composite[:, 16:48, 16:48], target[:, 16:48, 16:48])

    def test_zero_count_raises(self):
        with pytest.raises(EmptyDataset):
            SyntheticPairs(0, 64)


class TestFolderPairs:
    def _write_scene(self, folder, seed, size, count=2):
        folder.mkdir(parents=True, exist_ok=True)
        variant, scene = scene_pair(seed, size)
        images = [scene, variant] + [scene * 0.9 + 0.05] * (count - 2)
        for i, img in enumerate(images[:count]):
            save_rgb_png(folder / f"shot{i}.png", img)

    def test_counts_ordered_pairs_per_folder(self, tmp_path):
        self._write_scene(tmp_path / "a", 1, 64)
        self._write_scene(tmp_path / "b", 2, 64)
        ds = FolderPairs(str(tmp_path), 64)
        assert len(ds) == 4

    def test_three_shot_folder_gives_six_pairs(self, tmp_path):
        self._write_scene(tmp_path / "a", 3, 64, count=3)
        assert len(FolderPairs(str(tmp_path), 64)) == 6

    def test_resizes_to_training_resolution(self, tmp_path):
        self._write_scene(tmp_path / "a", 4, 80)
        composite, target = FolderPairs(str(tmp_path), 64)[0]
        assert composite.shape == (3, 64, 64)
        assert target.shape == (3, 64, 64)

    def test_single_image_folders_are_skipped(self, tmp_path):
        folder = tmp_path / "solo"
        folder.mkdir()
        save_rgb_png(folder / "only.png", np.full((3, 16, 16), 0.5))
        with pytest.raises(EmptyDataset):
            FolderPairs(str(tmp_path), 64)

    def test_missing_root_raises(self, tmp_path):
        with pytest.raises(EmptyDataset):
            FolderPairs(str(tmp_path / "nope"), 64)

    def test_empty_root_raises(self, tmp_path):
        with pytest.raises(EmptyDataset):
            FolderPairs(str(tmp_path), 64)

    def test_non_png_files_are_ignored(self, tmp_path):
        self._write_scene(tmp_path / "a", 5, 64)
        (tmp_path / "a" / "notes.txt").write_text("not an image")
        assert len(FolderPairs(str(tmp_path), 64)) == 2
