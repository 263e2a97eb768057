from advtext.training.trainer import accuracy_under_attack, adversarial_train, evaluate_model, train
